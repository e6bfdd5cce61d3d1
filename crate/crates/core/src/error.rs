use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph P({n},{k}): need n >= 3 and 1 <= k < n/2")]
    InvalidSpec { n: usize, k: usize },
    #[error("element id {id} is outside the universe of {universe} elements")]
    UnknownElement { id: usize, universe: usize },
    #[error("partitioning factor {t} must lie in 1..={n}")]
    InvalidFactor { t: usize, n: usize },
    #[error("{what} is not defined for n = {n}, k = {k}")]
    OutOfRange {
        what: &'static str,
        n: usize,
        k: usize,
    },
    #[error("no mixed dominating set with at most {0} elements")]
    NoSolutionWithin(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
