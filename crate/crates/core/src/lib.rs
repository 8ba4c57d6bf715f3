//! Exact expected hypervolume improvement and probability of improvement via
//! non-dominated space box decompositions, Monte Carlo oracles, an ordinary
//! Kriging surrogate, and a multi-objective Bayesian optimization loop.

// NaN-rejecting `!(a < b)` checks and index loops over parallel arrays are intended.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod benchmarks;
pub mod cli;
pub mod criteria;
pub mod decomposition;
pub mod error;
pub mod gauss;
mod key;
pub mod mobgo;
pub mod par;
pub mod pareto;
mod simplex;
pub mod sum;
pub mod surrogate;

pub use criteria::{GaussPred, McEstimate};
pub use decomposition::{BoxPartition, Hyperbox, LocalLowerBounds};
pub use error::{Error, Result};
pub use pareto::{dominates, hvi, hypervolume, nd_filter, HviEvaluator, ObjVec, ParetoApprox, RefPoint};
pub use par::Execution;
pub use mobgo::{Archive, Criterion, Problem, RunConfig};
pub use surrogate::KrigingModel;
