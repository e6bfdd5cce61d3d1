//! Mixed domination on generalized Petersen graphs `P(n,k)`.
//!
//! The crate builds `P(n,k)` with vertices and edges in one element universe,
//! verifies mixed dominating sets, emits the periodic block constructions for
//! `k = 1`, `k = 2` and `k >= 3`, evaluates the matching closed forms, and
//! solves small instances exactly as an independent check.

pub mod cli;
pub mod constructions;
pub mod domination;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod set;
pub mod setfile;
pub mod solver;

pub use constructions::{ConstructionOutput, Pattern};
pub use domination::{
    gamma_from_rd, greedy_complete, naive_lower_bound, redomination, verify, DominationReport,
};
pub use error::{Error, Result};
pub use formulas::{FormulaKind, FormulaResult};
pub use graph::{build_graph, BlockDecomposition, Element, Graph, GraphSpec};
pub use set::ElementSet;
pub use solver::{solve_exact, solve_exhaustive, OptimalResult, SolveBudget};
