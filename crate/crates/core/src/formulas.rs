//! Closed-form mixed domination numbers and bounds for `P(n,k)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::GraphSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaKind {
    Exact,
    UpperBound,
}

impl fmt::Display for FormulaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaKind::Exact => "exact",
            FormulaKind::UpperBound => "upper-bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: usize,
    pub kind: FormulaKind,
    pub source: String,
}

/// Brute-force values of `γ_md(P(n,1))` for `3 <= n <= 7`.
const K1_SMALL: [usize; 5] = [3, 4, 4, 5, 6];

/// `γ_md(P(n,1))`: tabulated for `n < 8`, block-8 case table above.
pub fn gamma_k1(n: usize) -> Result<FormulaResult> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "gamma_k1",
            n,
            k: 1,
        });
    }
    if n < 8 {
        return Ok(FormulaResult {
            value: K1_SMALL[n - 3],
            kind: FormulaKind::Exact,
            source: format!("k=1 small-n table n={n}"),
        });
    }
    let (m, r) = (n / 8, n % 8);
    let extra = match r {
        0 => 0,
        1 | 2 => 2,
        3 => 3,
        4 | 5 => 4,
        6 => 5,
        _ => 6,
    };
    Ok(FormulaResult {
        value: 6 * m + extra,
        kind: FormulaKind::Exact,
        source: format!("k=1 block-8 r={r}"),
    })
}

/// `γ_md(P(n,2))` over 4-blocks.
pub fn gamma_k2(n: usize) -> Result<FormulaResult> {
    if n < 5 {
        return Err(Error::OutOfRange {
            what: "gamma_k2",
            n,
            k: 2,
        });
    }
    let (m, r) = (n / 4, n % 4);
    let value = match r {
        0 => 3 * m,
        1 => 3 * m + 1,
        2 => 3 * m + 2,
        _ => 3 * m + 3,
    };
    Ok(FormulaResult {
        value,
        kind: FormulaKind::Exact,
        source: format!("k=2 block-4 r={r}"),
    })
}

/// Size reached by the alternative 8-block pattern for `k = 2`; one above
/// the optimum when `n mod 8` is 1 or 4.
pub fn gamma_k2_remark(n: usize) -> Result<FormulaResult> {
    if n < 8 {
        return Err(Error::OutOfRange {
            what: "gamma_k2_remark",
            n,
            k: 2,
        });
    }
    let (m, r) = (n / 8, n % 8);
    let extra = match r {
        0 => 0,
        1 | 2 => 2,
        3 => 3,
        4 | 5 => 4,
        6 => 5,
        _ => 6,
    };
    Ok(FormulaResult {
        value: 6 * m + extra,
        kind: FormulaKind::UpperBound,
        source: format!("k=2 block-8 r={r}"),
    })
}

/// Block parameters for `k >= 3`: `(k', T, m, r)` with `k' = ⌊k/2⌋`,
/// `T = 4k'+1`, `m = ⌊n/T⌋`, `r = n mod T`.
pub fn general_blocks(n: usize, k: usize) -> (usize, usize, usize, usize) {
    let half = k / 2;
    let period = 4 * half + 1;
    (half, period, n / period, n % period)
}

pub fn upper_bound_general(n: usize, k: usize) -> Result<FormulaResult> {
    if k < 3 || GraphSpec::new(n, k).is_err() {
        return Err(Error::OutOfRange {
            what: "upper_bound_general",
            n,
            k,
        });
    }
    let (half, _, m, r) = general_blocks(n, k);
    let per_block = 3 * half + 1;
    let (value, parity) = if r % 2 == 0 {
        (per_block * m + r, "even")
    } else {
        (per_block * m + half + r.div_ceil(2), "odd")
    };
    Ok(FormulaResult {
        value,
        kind: FormulaKind::UpperBound,
        source: format!("k>=3 r={r} {parity}"),
    })
}

/// The formula this crate uses for `P(n,k)`: exact for `k <= 2`, the
/// block upper bound otherwise.
pub fn formula(n: usize, k: usize) -> Result<FormulaResult> {
    GraphSpec::new(n, k)?;
    match k {
        1 => gamma_k1(n),
        2 => gamma_k2(n),
        _ => upper_bound_general(n, k),
    }
}
