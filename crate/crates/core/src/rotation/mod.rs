//! Closing Hamilton paths by rotation and merging the cycles of a 1-factor.

mod close;
mod merge;
mod reserve;

use thiserror::Error;

pub use close::{
    check_density_hypothesis, check_rotation, close_path, close_path_unstructured, rotation_close, CloseFailure,
    DensityVerdict, RotationCase, RotationInstance,
};
pub use merge::{merge_cycles, merge_into_hamilton, MergeOptions, MergeOutcome, MergeStats};
pub use reserve::ReserveGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("rotation hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no closing edge in {case:?} between {from:?} and {to:?}")]
    NoClosingEdge { case: RotationCase, from: Vec<usize>, to: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error("invalid merge input: {0}")]
    InvalidInput(String),
    #[error("reserve semidegree at vertex {vertex} fell to {degree}, below the floor {floor}")]
    ReserveDepleted { vertex: usize, degree: usize, floor: usize },
    #[error("merging used {used} new edges, budget {budget}")]
    BudgetExceeded { used: usize, budget: usize },
    #[error("no green edge leaves the cycles of cluster {cluster} ({cycles} cycles left)")]
    Stuck { cluster: usize, cycles: usize },
    #[error("rotation failed on a path of {path_len} vertices between {from:?} and {to:?}")]
    RotationFailed { path_len: usize, from: Vec<usize>, to: Vec<usize> },
    #[error("merge invariant broken: {0}")]
    InvariantBreach(String),
}
