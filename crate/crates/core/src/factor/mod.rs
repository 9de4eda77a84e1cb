//! 1-factors of regular digraphs through perfect matchings of the double cover.

mod matching;
mod sample;

use thiserror::Error;

pub use matching::{maximum_matching, maximum_matching_lists, perfect_matching, Matching};
pub use sample::{
    default_cycle_cap, default_sampling_steps, few_cycle_one_factor, sample_matching, switch_chain, FewCycleFactor,
    FewCycleParams,
};

use crate::bipartite::BipartiteGraph;
use crate::graph::{Digraph, OneFactor};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorError {
    #[error("digraph is not regular")]
    NotRegular,
    #[error("bipartite graph has no perfect matching")]
    NoPerfectMatching,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("vertex {vertex} has forbidden-subgraph degree {degree} > {limit}")]
    ForbiddenDegreeTooHigh { vertex: usize, degree: usize, limit: f64 },
    #[error("no acceptable factor in {draws} draws (fewest cycles seen {fewest_cycles}, cap {cycle_cap})")]
    ResampleBudgetExhausted { draws: usize, fewest_cycles: usize, cycle_cap: usize },
}

/// Splits a `ρ`-regular digraph into `ρ` edge-disjoint 1-factors by
/// repeatedly removing a perfect matching from the residual double cover.
pub fn one_factorization(g: &Digraph) -> Result<Vec<OneFactor>, FactorError> {
    let profile = g.semidegrees();
    if !profile.is_regular() {
        return Err(FactorError::NotRegular);
    }
    let mut cover = BipartiteGraph::double_cover(g);
    let mut factors = Vec::with_capacity(profile.min);
    for _ in 0..profile.min {
        // A regular bipartite graph always has a perfect matching.
        let mate = perfect_matching(&cover).ok_or(FactorError::NoPerfectMatching)?;
        for (x, &y) in mate.iter().enumerate() {
            cover.remove_edge(x, y);
        }
        factors.push(OneFactor::from_successors(mate).expect("matching of a loopless double cover"));
    }
    debug_assert_eq!(cover.edge_count(), 0);
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{random_regular_tournament, regular_circulant};

    fn assert_partition(g: &Digraph, factors: &[OneFactor]) {
        let mut seen = Digraph::empty(g.n());
        for f in factors {
            for (x, y) in f.edges() {
                assert!(g.has_edge(x, y), "{x}->{y} not in host");
                assert_eq!(seen.add_edge(x, y), Ok(true), "{x}->{y} used twice");
            }
        }
        assert_eq!(seen.edge_count(), g.edge_count());
    }

    #[test]
    fn triangle_factorizes_into_itself() {
        let g = regular_circulant(3).unwrap();
        let fs = one_factorization(g.as_digraph()).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].successors(), &[1, 2, 0]);
    }

    #[test]
    fn circulant_five_gives_two_factors() {
        let g = regular_circulant(5).unwrap();
        let fs = one_factorization(g.as_digraph()).unwrap();
        assert_eq!(fs.len(), 2);
        assert_partition(g.as_digraph(), &fs);
    }

    #[test]
    fn random_tournament_51_partitions_all_edges() {
        let g = random_regular_tournament(51, 50_000, 8).unwrap();
        let fs = one_factorization(g.as_digraph()).unwrap();
        assert_eq!(fs.len(), 25);
        assert_eq!(fs.iter().map(OneFactor::n).sum::<usize>(), 1275);
        assert_partition(g.as_digraph(), &fs);
    }

    #[test]
    fn complete_digraph_factorizes() {
        let g = Digraph::complete(6);
        let fs = one_factorization(&g).unwrap();
        assert_eq!(fs.len(), 5);
        assert_partition(&g, &fs);
    }

    #[test]
    fn irregular_rejected() {
        let g = Digraph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(one_factorization(&g), Err(FactorError::NotRegular));
    }
}
