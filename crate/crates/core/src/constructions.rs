//! Explicit block-pattern mixed dominating sets.
//!
//! Every pattern tiles the columns `0..n` with a fixed per-block set and
//! patches the trailing partial block with a remainder set. Indices are
//! reduced mod `n`. The raw set is always checked. If it fails, the greedy
//! pass closes the gap; when that overshoots the predicted size, the repair
//! escalates to an exact minimum completion of the raw set and then to an
//! exact re-solve of the remainder on top of the periodic blocks alone.
//! Every change is recorded in the output.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::domination::{greedy_complete, is_dominating};
use crate::error::{Error, Result};
use crate::formulas::{self, general_blocks};
use crate::graph::{Element, Graph};
use crate::set::ElementSet;
use crate::solver::{min_completion, SolveBudget};

use Element::{InnerEdge, InnerVertex, OuterEdge, OuterVertex, Spoke};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    K1Block8,
    K2Block4,
    K2Block8,
    General,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::K1Block8,
        Pattern::K2Block4,
        Pattern::K2Block8,
        Pattern::General,
    ];

    /// Default pattern for a given skip.
    pub fn for_k(k: usize) -> Pattern {
        match k {
            1 => Pattern::K1Block8,
            2 => Pattern::K2Block4,
            _ => Pattern::General,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pattern::K1Block8 => "K1_Block8",
            Pattern::K2Block4 => "K2_Block4",
            Pattern::K2Block8 => "K2_Block8",
            Pattern::General => "General",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown pattern `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairMethod {
    Greedy,
    /// Fewest additions to the raw set.
    ExactCompletion,
    /// Remainder elements dropped, tail re-solved over the periodic blocks.
    TailResolve,
}

impl fmt::Display for RepairMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepairMethod::Greedy => "greedy",
            RepairMethod::ExactCompletion => "exact-completion",
            RepairMethod::TailResolve => "tail-resolve",
        })
    }
}

/// Time allowed for each exact repair step.
pub const REPAIR_TIME: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutput {
    pub n: usize,
    pub k: usize,
    pub set: ElementSet,
    pub pattern: Pattern,
    pub predicted_size: usize,
    /// The pattern on its own dominates.
    pub raw_valid: bool,
    pub repaired: bool,
    pub repair_method: Option<RepairMethod>,
    pub repair_added: ElementSet,
    /// Remainder elements the tail re-solve discarded.
    pub repair_removed: ElementSet,
    /// Generated elements that collided with one already present after
    /// reducing indices mod `n`.
    pub duplicates: Vec<Element>,
}

impl ConstructionOutput {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// The pattern's own elements, before any repair.
    pub fn raw_set(&self) -> ElementSet {
        let mut raw = self.set.clone();
        raw.difference_with(&self.repair_added);
        raw.union_with(&self.repair_removed);
        raw
    }
}

struct Draft<'g> {
    graph: &'g Graph,
    set: ElementSet,
    // elements contributed by the periodic blocks only
    blocks: ElementSet,
    duplicates: Vec<Element>,
}

impl<'g> Draft<'g> {
    fn new(graph: &'g Graph) -> Self {
        Draft {
            graph,
            set: graph.empty_set(),
            blocks: graph.empty_set(),
            duplicates: Vec::new(),
        }
    }

    fn insert(&mut self, el: Element) -> usize {
        let el = el.reduced(self.graph.n());
        let id = el.id(self.graph.n());
        if !self.set.insert(id) {
            self.duplicates.push(el);
        }
        id
    }

    fn block(&mut self, el: Element) {
        let id = self.insert(el);
        self.blocks.insert(id);
    }

    fn tail(&mut self, el: Element) {
        self.insert(el);
    }

    fn finish(self, pattern: Pattern, predicted_size: usize) -> ConstructionOutput {
        let graph = self.graph;
        let raw = self.set;
        let raw_valid = is_dominating(graph, &raw);
        let (set, repair_method) = if raw_valid {
            (raw.clone(), None)
        } else {
            repair(graph, &raw, &self.blocks, predicted_size)
        };
        let mut repair_added = set.clone();
        repair_added.difference_with(&raw);
        let mut repair_removed = raw.clone();
        repair_removed.difference_with(&set);
        ConstructionOutput {
            n: graph.n(),
            k: graph.k(),
            set,
            pattern,
            predicted_size,
            raw_valid,
            repaired: !raw_valid,
            repair_method,
            repair_added,
            repair_removed,
            duplicates: self.duplicates,
        }
    }
}

fn repair(
    graph: &Graph,
    raw: &ElementSet,
    blocks: &ElementSet,
    target: usize,
) -> (ElementSet, Option<RepairMethod>) {
    let mut best = greedy_complete(graph, raw);
    let mut method = RepairMethod::Greedy;
    let budget = SolveBudget::with_time(REPAIR_TIME);
    if best.len() > target {
        let (added, _) = min_completion(graph, raw, budget);
        if raw.len() + added.len() < best.len() {
            best = raw.union(&added);
            method = RepairMethod::ExactCompletion;
        }
    }
    if best.len() > target && blocks != raw {
        let (added, _) = min_completion(graph, blocks, budget);
        if blocks.len() + added.len() < best.len() {
            best = blocks.union(&added);
            method = RepairMethod::TailResolve;
        }
    }
    (best, Some(method))
}

fn out_of_range(what: &'static str, n: usize, k: usize) -> Error {
    Error::OutOfRange { what, n, k }
}

/// 8-block pattern for `P(n,1)`, `n >= 8`.
pub fn construct_k1(n: usize) -> Result<ConstructionOutput> {
    if n < 8 {
        return Err(out_of_range("construct_k1", n, 1));
    }
    let graph = Graph::new(n, 1)?;
    let mut d = Draft::new(&graph);
    let (m, r) = (n / 8, n % 8);
    for i in 0..m {
        let b = 8 * i;
        for el in [
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerEdge(b + 2),
            OuterVertex(b + 4),
            InnerEdge(b + 5),
            OuterEdge(b + 6),
        ] {
            d.block(el);
        }
    }
    let b = 8 * m;
    // v_{8m+1}v_0 and v_{8m+6}v_0 are the closing edge v_{n-1}v_0
    let tail: &[Element] = match r {
        0 => &[],
        1 => &[InnerVertex(b), OuterEdge(b)],
        2 => &[InnerVertex(b), OuterEdge(b + 1)],
        3 => &[InnerVertex(b), OuterEdge(b + 1), InnerEdge(b + 1)],
        4 => &[
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerEdge(b + 2),
            OuterVertex(b + 3),
        ],
        5 => &[
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerEdge(b + 2),
            OuterVertex(b + 4),
        ],
        6 => &[
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerEdge(b + 2),
            OuterVertex(b + 4),
            Spoke(b + 5),
        ],
        _ => &[
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerEdge(b + 2),
            OuterVertex(b + 4),
            InnerEdge(b + 5),
            OuterEdge(b + 6),
        ],
    };
    for &el in tail {
        d.tail(el);
    }
    Ok(d.finish(Pattern::K1Block8, formulas::gamma_k1(n)?.value))
}

/// 4-block pattern for `P(n,2)`, `n >= 5`. The trailing `n mod 4` columns
/// each get their spoke, starting at column `4m`.
pub fn construct_k2_block4(n: usize) -> Result<ConstructionOutput> {
    if n < 5 {
        return Err(out_of_range("construct_k2_block4", n, 2));
    }
    let graph = Graph::new(n, 2)?;
    let mut d = Draft::new(&graph);
    let (m, r) = (n / 4, n % 4);
    for i in 0..m {
        let b = 4 * i;
        d.block(Spoke(b));
        d.block(InnerEdge(b + 1));
        d.block(OuterVertex(b + 2));
    }
    for c in 4 * m..4 * m + r {
        d.tail(Spoke(c));
    }
    Ok(d.finish(Pattern::K2Block4, formulas::gamma_k2(n)?.value))
}

/// Alternative 8-block pattern for `P(n,2)`, `n >= 8`.
pub fn construct_k2_block8(n: usize) -> Result<ConstructionOutput> {
    if n < 8 {
        return Err(out_of_range("construct_k2_block8", n, 2));
    }
    let graph = Graph::new(n, 2)?;
    let mut d = Draft::new(&graph);
    let (m, r) = (n / 8, n % 8);
    for i in 0..m {
        let b = 8 * i;
        for el in [
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerVertex(b + 3),
            Spoke(b + 4),
            OuterEdge(b + 5),
            Spoke(b + 7),
        ] {
            d.block(el);
        }
    }
    for el in k2_block8_tail(8 * m, r) {
        d.tail(el);
    }
    Ok(d.finish(Pattern::K2Block8, formulas::gamma_k2_remark(n)?.value))
}

/// Remainder sets for the 8-block `k = 2` pattern, starting at column `b`.
/// Each is a minimum completion of the periodic blocks; columns 0 and 1
/// are reached across the wrap.
fn k2_block8_tail(b: usize, r: usize) -> Vec<Element> {
    match r {
        0 => vec![],
        1 => vec![OuterVertex(0), InnerVertex(b)],
        2 => vec![InnerVertex(b), Spoke(b + 1)],
        3 => vec![InnerVertex(1), InnerVertex(b), OuterEdge(b + 1)],
        4 => vec![
            InnerVertex(b),
            OuterVertex(b + 1),
            OuterVertex(b + 2),
            Spoke(b + 3),
        ],
        5 => vec![
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerVertex(b + 3),
            Spoke(b + 4),
        ],
        6 => vec![
            InnerVertex(b),
            OuterEdge(b + 1),
            InnerVertex(b + 3),
            Spoke(b + 4),
            Spoke(b + 5),
        ],
        _ => vec![
            InnerVertex(b),
            OuterVertex(b + 1),
            Spoke(b + 2),
            InnerEdge(b + 3),
            OuterVertex(b + 4),
            Spoke(b + 6),
        ],
    }
}

/// Block pattern for `k >= 3` with period `T = 4⌊k/2⌋ + 1`.
pub fn construct_general(n: usize, k: usize) -> Result<ConstructionOutput> {
    let bound =
        formulas::upper_bound_general(n, k).map_err(|_| out_of_range("construct_general", n, k))?;
    let graph = Graph::new(n, k)?;
    let mut d = Draft::new(&graph);
    let (half, period, m, r) = general_blocks(n, k);
    let even = k.is_multiple_of(2);
    for j in 0..m {
        let b = period * j;
        for i in 0..half {
            if even {
                d.block(InnerVertex(b + 2 * i));
                d.block(Spoke(b + 2 * i + 1));
                d.block(OuterEdge(b + 2 * half + 2 * i));
            } else {
                d.block(InnerVertex(b + 2 * i + 1));
                d.block(Spoke(b + 2 * i + 2));
                d.block(OuterEdge(b + 2 * half + 2 * i + 1));
            }
        }
        d.block(Spoke(if even { b + 4 * half } else { b }));
    }
    for el in general_tail(period * m, half, r, even) {
        d.tail(el);
    }
    Ok(d.finish(Pattern::General, bound.value))
}

/// Remainder elements for the trailing `r` columns starting at column `b`.
/// Indices below `b` reach back into the last full block.
fn general_tail(b: usize, half: usize, r: usize, even_k: bool) -> Vec<Element> {
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    // inner vertex / spoke pairs covering columns b..b+2*pairs
    let pairs = |out: &mut Vec<Element>, count: usize| {
        for i in 0..count {
            if even_k {
                out.push(InnerVertex(b + 2 * i));
                out.push(Spoke(b + 2 * i + 1));
            } else {
                out.push(InnerVertex(b + 2 * i + 1));
                out.push(Spoke(b + 2 * i));
            }
        }
    };
    if r.is_multiple_of(2) {
        pairs(&mut out, r / 2);
    } else if r <= 2 * half {
        pairs(&mut out, (r - 1) / 2);
        out.push(Spoke(b + r - 1));
        for i in 0..(2 * half - r - 1) / 2 {
            out.push(InnerVertex(b - 2 * i - 2));
        }
    } else if even_k {
        pairs(&mut out, half);
        for i in 0..(r - 2 * half).div_ceil(2) {
            out.push(OuterEdge(b + 2 * half + 2 * i));
        }
    } else {
        for i in 0..half {
            out.push(InnerVertex(b + 2 * i + 2));
            out.push(Spoke(b + 2 * i + 1));
        }
        out.push(Spoke(b));
        for i in 0..(r - 2 * half - 1) / 2 {
            out.push(OuterEdge(b + 2 * half + 2 * i + 1));
        }
    }
    out
}

/// Runs `pattern` on `P(n,k)`.
pub fn construct(pattern: Pattern, n: usize, k: usize) -> Result<ConstructionOutput> {
    let want = match pattern {
        Pattern::K1Block8 => Some(1),
        Pattern::K2Block4 | Pattern::K2Block8 => Some(2),
        Pattern::General => None,
    };
    match (pattern, want) {
        (_, Some(w)) if w != k => Err(out_of_range(pattern.name(), n, k)),
        (Pattern::K1Block8, _) => construct_k1(n),
        (Pattern::K2Block4, _) => construct_k2_block4(n),
        (Pattern::K2Block8, _) => construct_k2_block8(n),
        (Pattern::General, _) => construct_general(n, k),
    }
}

/// Default construction for `P(n,k)` when one applies.
pub fn best_construction(n: usize, k: usize) -> Option<ConstructionOutput> {
    construct(Pattern::for_k(k), n, k).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::verify;

    fn ids(n: usize, els: &[Element]) -> Vec<usize> {
        let mut v: Vec<_> = els.iter().map(|e| e.reduced(n).id(n)).collect();
        v.sort_unstable();
        v
    }

    fn check(c: &ConstructionOutput) {
        let g = Graph::new(c.n, c.k).unwrap();
        assert!(verify(&g, &c.set).is_dominating, "{} n={}", c.pattern, c.n);
        if c.raw_valid {
            assert!(!c.repaired && c.repair_added.is_empty() && c.repair_removed.is_empty());
            assert!(c.repair_method.is_none());
        }
    }

    #[test]
    fn k1_block_set_for_p8() {
        let c = construct_k1(8).unwrap();
        check(&c);
        assert!(c.raw_valid);
        assert_eq!(
            c.set.to_vec(),
            ids(
                8,
                &[
                    InnerVertex(0),
                    OuterEdge(1),
                    InnerEdge(2),
                    OuterVertex(4),
                    InnerEdge(5),
                    OuterEdge(6)
                ]
            )
        );
    }

    #[test]
    fn k1_remainder_two() {
        let c = construct_k1(10).unwrap();
        check(&c);
        let mut want = ids(
            10,
            &[
                InnerVertex(0),
                OuterEdge(1),
                InnerEdge(2),
                OuterVertex(4),
                InnerEdge(5),
                OuterEdge(6),
            ],
        );
        want.extend(ids(10, &[InnerVertex(8), OuterEdge(9)]));
        want.sort_unstable();
        assert_eq!(c.set.to_vec(), want);
        assert_eq!(c.size(), 8);
    }

    #[test]
    fn k1_two_blocks() {
        let c = construct_k1(16).unwrap();
        check(&c);
        assert!(c.raw_valid);
        assert_eq!(c.size(), 12);
        assert!(construct_k1(7).is_err());
    }

    #[test]
    fn k2_block4_sets() {
        let c = construct_k2_block4(8).unwrap();
        check(&c);
        assert_eq!(
            c.set.to_vec(),
            ids(
                8,
                &[
                    Spoke(0),
                    InnerEdge(1),
                    OuterVertex(2),
                    Spoke(4),
                    InnerEdge(5),
                    OuterVertex(6)
                ]
            )
        );
        let c = construct_k2_block4(9).unwrap();
        check(&c);
        assert!(c.raw_valid);
        let g = Graph::new(9, 2).unwrap();
        let els: Vec<_> = c.set.iter().map(|id| g.element(id).unwrap()).collect();
        let count = |f: fn(&Element) -> bool| els.iter().filter(|e| f(e)).count();
        assert_eq!(count(|e| matches!(e, OuterVertex(_))), 2);
        assert_eq!(count(|e| matches!(e, Spoke(_))), 3);
        assert_eq!(count(|e| matches!(e, InnerEdge(_))), 2);
        let c = construct_k2_block4(12).unwrap();
        check(&c);
        assert_eq!(c.size(), 9);
        assert!(construct_k2_block4(4).is_err());
    }

    #[test]
    fn k2_block8_sizes() {
        for (n, want) in [(16, 12), (9, 8), (11, 9)] {
            let c = construct_k2_block8(n).unwrap();
            check(&c);
            assert!(c.raw_valid, "n={n}");
            assert_eq!(c.size(), want, "n={n}");
        }
        assert!(construct_k2_block8(7).is_err());
    }

    #[test]
    fn general_p27_sets() {
        let c = construct_general(27, 4).unwrap();
        check(&c);
        assert!(c.raw_valid);
        assert_eq!(c.size(), 21);
        let g = Graph::new(27, 4).unwrap();
        let els: Vec<_> = c.set.iter().map(|id| g.element(id).unwrap()).collect();
        let count = |f: fn(&Element) -> bool| els.iter().filter(|e| f(e)).count();
        assert_eq!(count(|e| matches!(e, InnerVertex(_))), 6);
        assert_eq!(count(|e| matches!(e, Spoke(_))), 9);
        assert_eq!(count(|e| matches!(e, OuterEdge(_))), 6);

        let c = construct_general(27, 5).unwrap();
        check(&c);
        assert!(c.raw_valid);
        assert_eq!(c.size(), 21);
    }

    #[test]
    fn general_odd_remainder_is_repaired_within_bound() {
        let c = construct_general(13, 3).unwrap();
        check(&c);
        assert!(c.size() <= 11);
        assert!(!c.raw_valid);
        assert!(c.repaired);
        assert_eq!(
            c.raw_set().len() + c.repair_added.len() - c.repair_removed.len(),
            c.size()
        );
    }

    #[test]
    fn general_preconditions() {
        assert!(construct_general(13, 2).is_err());
        assert!(construct_general(6, 3).is_err());
    }

    #[test]
    fn dispatch_checks_k() {
        assert!(construct(Pattern::K1Block8, 10, 2).is_err());
        assert!(construct(Pattern::K2Block8, 10, 2).is_ok());
        assert_eq!("k2_block4".parse::<Pattern>(), Ok(Pattern::K2Block4));
        assert!("nope".parse::<Pattern>().is_err());
    }

    #[test]
    fn block8_vs_block4() {
        for n in 8..400 {
            let a = construct_k2_block4(n).unwrap().size();
            let b = construct_k2_block8(n).unwrap().size();
            let want = usize::from(matches!(n % 8, 1 | 4));
            assert_eq!(b - a, want, "n={n}");
        }
    }
}
