//! Desk-scale packing of edge-disjoint Hamilton cycles: few-cycle 1-factors
//! of a regular core, merged into Hamilton cycles against a reserve.

mod reserve;
mod run;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use reserve::{regular_trim, reserve_split, reserve_window, ReserveSplit, SPREAD_LIMIT};
pub use run::{almost_hamilton_decomposition, CycleProvenance, DecompositionReport, DecompositionStats, StopReason};
pub use verify::{verify_decomposition, DecompositionVerdict, Violation};

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("semidegree spread {spread} exceeds {limit}")]
    NotNearRegular { spread: usize, limit: usize },
    #[error("reserve degree window [{lo}, {hi}] unreachable at vertex {vertex}")]
    DegreeWindowUnreachable { vertex: usize, lo: usize, hi: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Knobs of [`almost_hamilton_decomposition`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposerConfig {
    /// Reserve sampling rate.
    pub gamma: f64,
    /// Cycle cap of each 1-factor; `None` means the sampler's default.
    pub cycle_cap: Option<usize>,
    /// Factor draws per extraction attempt.
    pub max_resamples: usize,
    /// New edges one merge may introduce; `None` means six per factor cycle.
    pub edge_budget: Option<usize>,
    /// Consecutive failed attempts that end the run.
    pub max_failure_streak: usize,
    /// Minimum reserve semidegree kept during merging.
    pub reserve_floor: usize,
    pub seed: u64,
}

impl Default for DecomposerConfig {
    fn default() -> Self {
        DecomposerConfig {
            gamma: 0.12,
            cycle_cap: None,
            max_resamples: 50,
            edge_budget: None,
            max_failure_streak: 10,
            reserve_floor: 0,
            seed: 0,
        }
    }
}

impl DecomposerConfig {
    pub fn with_seed(seed: u64) -> Self {
        DecomposerConfig { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), DecomposeError> {
        if !(self.gamma > 0.0 && self.gamma < 0.25) {
            return Err(DecomposeError::InvalidConfig(format!("gamma = {} is outside (0, 1/4)", self.gamma)));
        }
        if self.max_resamples == 0 || self.max_failure_streak == 0 || self.cycle_cap == Some(0) || self.edge_budget == Some(0) {
            return Err(DecomposeError::InvalidConfig("budgets must be positive".into()));
        }
        Ok(())
    }
}
