//! Regularity-layer toolkit: pair checks, pair splitting and trimming,
//! reduced multidigraphs, almost-1-factors and shifted walks.

mod factors;
mod multi;
mod pairs;
mod regularity;
mod walk;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use factors::{almost_one_factors, audit_almost_one_factors, AlmostFactorParams, AlmostOneFactors, RESERVOIR_ATTEMPTS};
pub use multi::{build_reduced_multidigraph, edge_count_check, EdgeCount, MultiEdge, ReducedMultiDigraph};
pub use pairs::{
    bounded_degree_subgraph, random_pair, regular_pair, split_pair, trim_super_regular, BoundedDegreeSubgraph, TrimmedCycle,
    BOUNDED_DEGREE_ATTEMPTS,
};
pub use regularity::{
    check_regularity, check_super_regularity, DegreeViolation, RegularityMode, RegularityVerdict, Side, SuperRegularityVerdict,
    Witness, EXHAUSTIVE_LIMIT,
};
pub use walk::{audit_shifted_walk, shifted_walk, ShiftedWalk, WalkSegment};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReducedError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("exhaustive regularity check needs a class of at most {limit} vertices, smallest class has {size}")]
    TooLargeForExhaustive { size: usize, limit: usize },
    #[error("cluster {cluster} has {bad} vertices outside the degree window, at most {allowed} may be removed")]
    TooManyBadVertices { cluster: usize, bad: usize, allowed: usize },
    #[error("trimmed pair {pair} has a vertex of degree {degree} outside [{lo}, {hi}]")]
    WindowViolated { pair: usize, degree: usize, lo: f64, hi: f64 },
    #[error("no admissible sample after {attempts} attempts")]
    RetryBudgetExhausted { attempts: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cluster {cluster} has {size} vertices, expected {expected}")]
    UnequalClusters { cluster: usize, size: usize, expected: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("cluster {cluster} has semidegree {degree} outside [{lo}, {hi}]")]
    DegreeHypothesisViolated { cluster: usize, degree: usize, lo: f64, hi: f64 },
    #[error("no balanced reservoir found in {attempts} attempts")]
    ReservoirSelectionFailed { attempts: usize },
    #[error("only {usable} of the {needed} required 1-factors have at most {limit} temporary edges")]
    TemporaryEdgeExcess { needed: usize, usable: usize, limit: usize },
    #[error("cannot close path {path:?} of collection {factor}: candidates before the start {a_minus:?}, after the end {b_plus:?}")]
    PatchingFailed { factor: usize, path: Vec<usize>, a_minus: Vec<usize>, b_plus: Vec<usize> },
    #[error("no connecting edge after cycle {cycle}: {from:?} has no edge into {to:?}")]
    ConnectingEdgeNotFound { cycle: usize, from: Vec<usize>, to: Vec<usize> },
    #[error("cycle {cycle} traversed {traversals} times, bound {bound}")]
    TraversalBoundExceeded { cycle: usize, traversals: usize, bound: usize },
}

/// Tolerances and thresholds of the regularity layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityParams {
    pub eps: f64,
    pub eps_prime: f64,
    /// Pairs of density at least `d` are edges of the reduced digraph.
    pub d: f64,
    /// Multiplicity quantum: a pair of density `d_ij` gives `⌊d_ij/β⌋` edges.
    pub beta: f64,
    pub d_prime: f64,
    /// Minimum cluster count; recorded only.
    pub min_clusters: usize,
}

impl Default for RegularityParams {
    fn default() -> Self {
        RegularityParams { eps: 0.01, eps_prime: 0.01, d: 0.1, beta: 0.05, d_prime: 0.2, min_clusters: 1 }
    }
}

impl RegularityParams {
    pub fn validate(&self) -> Result<(), ReducedError> {
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        if !(self.eps > 0.0 && self.eps <= self.eps_prime && self.eps_prime < 1.0) {
            return Err(ReducedError::InvalidParameter(format!("need 0 < eps <= eps' < 1, got {} and {}", self.eps, self.eps_prime)));
        }
        if !(unit(self.d) && unit(self.d_prime) && unit(self.beta) && self.beta > 0.0) {
            return Err(ReducedError::InvalidParameter("d, d' and beta must lie in [0,1], beta > 0".into()));
        }
        Ok(())
    }
}
