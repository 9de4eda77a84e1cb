//! Exact ground truth for small instances.

mod enumerate;
mod hamilton;
mod permanent;

use thiserror::Error;

pub use enumerate::{count_regular_tournaments_by_scan, enumerate_regular_tournaments, for_each_regular_tournament};
pub use hamilton::{
    complete_digraph_decomposition, exhaustive_hamilton_decomposition, hamilton_cycle_exists, hamilton_cycles,
    max_edge_disjoint_hamilton_cycles, HamiltonPacking, DECOMPOSITION_LIMIT, HELD_KARP_LIMIT, PACKING_LIMIT,
};
pub use permanent::{
    bregman_bound, exact_matching_count, matching_count_bounds, permanent_by_permutations, vdw_lower_bound, MatchingCountBounds,
    PERMANENT_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance of size {n} exceeds the oracle limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("n = {0} is not supported")]
    Unsupported(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
