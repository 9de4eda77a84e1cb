use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::bitset::BitRow;

/// A loopless digraph on vertices `0..n` stored as out- and in-bit-rows.
///
/// Antiparallel pairs are allowed here; [`OrientedGraph`](super::OrientedGraph)
/// is the wrapper that forbids them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    out: Vec<BitRow>,
    inn: Vec<BitRow>,
    edge_count: usize,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph { n, out: vec![BitRow::new(n); n], inn: vec![BitRow::new(n); n], edge_count: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateOrAntiparallelEdge { u, v });
            }
        }
        Ok(g)
    }

    /// Complete digraph: every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.insert_unchecked(u, v);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        Ok(())
    }

    /// Inserts `u → v`; `Ok(false)` when it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check_pair(u, v)?;
        Ok(self.insert_unchecked(u, v))
    }

    pub(crate) fn insert_unchecked(&mut self, u: usize, v: usize) -> bool {
        if self.out[u].insert(v) {
            self.inn[v].insert(u);
            self.edge_count += 1;
            true
        } else {
            false
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n || v >= self.n {
            return false;
        }
        if self.out[u].remove(v) {
            self.inn[v].remove(u);
            self.edge_count -= 1;
            true
        } else {
            false
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out[u].contains(v)
    }

    pub fn out_row(&self, u: usize) -> &BitRow {
        &self.out[u]
    }

    pub fn in_row(&self, v: usize) -> &BitRow {
        &self.inn[v]
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[u].iter()
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[v].iter()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.out[u].iter().map(move |v| (u, v))).collect()
    }

    /// True when no unordered pair carries both orientations.
    pub fn is_oriented(&self) -> bool {
        (0..self.n).all(|u| self.out[u].intersection_count(&self.inn[u]) == 0)
    }

    pub fn semidegrees(&self) -> SemidegreeProfile {
        SemidegreeProfile::from_counts(
            (0..self.n).map(|v| self.out_degree(v)).collect(),
            (0..self.n).map(|v| self.in_degree(v)).collect(),
        )
    }

    /// Induced subgraph on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut g = Digraph::empty(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    g.insert_unchecked(i, j);
                }
            }
        }
        g
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; self.n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                let row = if forward { &self.out[u] } else { &self.inn[u] };
                for w in row.iter() {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}

/// Per-vertex out/in degrees together with δ⁰ and Δ⁰.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidegreeProfile {
    pub out: Vec<usize>,
    pub inn: Vec<usize>,
    /// Minimum semidegree δ⁰: min over vertices of min(d⁺, d⁻).
    pub min: usize,
    /// Maximum semidegree Δ⁰: max over vertices of max(d⁺, d⁻).
    pub max: usize,
}

impl SemidegreeProfile {
    pub fn from_counts(out: Vec<usize>, inn: Vec<usize>) -> Self {
        debug_assert_eq!(out.iter().sum::<usize>(), inn.iter().sum::<usize>());
        let min = out.iter().chain(&inn).copied().min().unwrap_or(0);
        let max = out.iter().chain(&inn).copied().max().unwrap_or(0);
        SemidegreeProfile { out, inn, min, max }
    }

    pub fn is_regular(&self) -> bool {
        self.min == self.max
    }

    pub fn total(&self) -> usize {
        self.out.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_digraph_counts() {
        let g = Digraph::complete(5);
        assert_eq!(g.edge_count(), 20);
        assert!(!g.is_oriented());
        let p = g.semidegrees();
        assert_eq!((p.min, p.max), (4, 4));
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        let mut g = Digraph::empty(3);
        assert!(matches!(g.add_edge(1, 1), Err(GraphError::SelfLoop { vertex: 1 })));
        assert!(matches!(g.add_edge(0, 3), Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })));
        assert_eq!(g.add_edge(0, 1), Ok(true));
        assert_eq!(g.add_edge(0, 1), Ok(false));
        assert!(g.remove_edge(0, 1));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn strong_connectivity() {
        let tri = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(tri.is_strongly_connected());
        let path = Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_strongly_connected());
    }
}
