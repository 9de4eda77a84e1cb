use serde::{Deserialize, Serialize};

use crate::graph::Digraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The cycle does not visit every vertex exactly once.
    NotPermutation { cycle: usize },
    MissingEdge { cycle: usize, from: usize, to: usize },
    /// Edge `from → to` is used by two cycles.
    DuplicateEdge { first: usize, second: usize, from: usize, to: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionVerdict {
    pub valid: bool,
    pub cycles: usize,
    pub violation: Option<Violation>,
}

/// Checks that every cycle is a Hamilton cycle of `g` and that no edge is
/// used twice. Reports the first violation in cycle order.
pub fn verify_decomposition(g: &Digraph, cycles: &[Vec<usize>]) -> DecompositionVerdict {
    let n = g.n();
    let mut owner: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    let fail = |v| DecompositionVerdict { valid: false, cycles: cycles.len(), violation: Some(v) };
    for (c, cycle) in cycles.iter().enumerate() {
        let mut seen = vec![false; n];
        let permutation = cycle.len() == n && cycle.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
        if !permutation || n == 0 {
            return fail(Violation::NotPermutation { cycle: c });
        }
        for k in 0..n {
            let (u, v) = (cycle[k], cycle[(k + 1) % n]);
            if !g.has_edge(u, v) {
                return fail(Violation::MissingEdge { cycle: c, from: u, to: v });
            }
            if let Some(first) = owner[u][v] {
                return fail(Violation::DuplicateEdge { first, second: c, from: u, to: v });
            }
            owner[u][v] = Some(c);
        }
    }
    DecompositionVerdict { valid: true, cycles: cycles.len(), violation: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catches_each_violation() {
        let g = Digraph::complete(4);
        assert!(verify_decomposition(&g, &[vec![0, 1, 2, 3], vec![0, 3, 2, 1]]).valid);
        assert_eq!(verify_decomposition(&g, &[vec![0, 1, 1, 3]]).violation, Some(Violation::NotPermutation { cycle: 0 }));
        assert_eq!(verify_decomposition(&g, &[vec![0, 1, 2]]).violation, Some(Violation::NotPermutation { cycle: 0 }));
        assert_eq!(
            verify_decomposition(&g, &[vec![0, 1, 2, 3], vec![1, 2, 0, 3]]).violation,
            Some(Violation::DuplicateEdge { first: 0, second: 1, from: 1, to: 2 })
        );
        let tri = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(
            verify_decomposition(&tri, &[vec![0, 2, 1]]).violation,
            Some(Violation::MissingEdge { cycle: 0, from: 0, to: 2 })
        );
        assert!(verify_decomposition(&tri, &[]).valid);
    }
}
