//! Bipartite graphs with left-to-right edges.

use serde::{Deserialize, Serialize};

use crate::bitset::BitRow;
use crate::graph::Digraph;

/// Classes `A = 0..left` and `B = 0..right`, edges stored from both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    adj: Vec<BitRow>,
    radj: Vec<BitRow>,
    edge_count: usize,
}

impl BipartiteGraph {
    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteGraph { adj: vec![BitRow::new(right); left], radj: vec![BitRow::new(left); right], edge_count: 0 }
    }

    /// Duplicate edges are ignored; endpoints must be in range.
    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Self {
        let mut b = BipartiteGraph::empty(left, right);
        for &(a, c) in edges {
            b.add_edge(a, c);
        }
        b
    }

    pub fn complete(left: usize, right: usize) -> Self {
        let mut b = BipartiteGraph::empty(left, right);
        for a in 0..left {
            for c in 0..right {
                b.add_edge(a, c);
            }
        }
        b
    }

    /// Two copies of `V(g)`; `x` on the left is joined to `y` on the right iff `x → y`.
    pub fn double_cover(g: &Digraph) -> Self {
        let n = g.n();
        BipartiteGraph {
            adj: (0..n).map(|x| g.out_row(x).clone()).collect(),
            radj: (0..n).map(|y| g.in_row(y).clone()).collect(),
            edge_count: g.edge_count(),
        }
    }

    pub fn left_size(&self) -> usize {
        self.adj.len()
    }

    pub fn right_size(&self) -> usize {
        self.radj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> bool {
        assert!(a < self.left_size() && b < self.right_size(), "edge ({a},{b}) out of range");
        if self.adj[a].insert(b) {
            self.radj[b].insert(a);
            self.edge_count += 1;
            true
        } else {
            false
        }
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        if self.adj[a].remove(b) {
            self.radj[b].remove(a);
            self.edge_count -= 1;
            true
        } else {
            false
        }
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn left_row(&self, a: usize) -> &BitRow {
        &self.adj[a]
    }

    pub fn right_row(&self, b: usize) -> &BitRow {
        &self.radj[b]
    }

    pub fn left_neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[a].iter()
    }

    pub fn right_neighbors(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.radj[b].iter()
    }

    pub fn left_degree(&self, a: usize) -> usize {
        self.adj[a].count()
    }

    pub fn right_degree(&self, b: usize) -> usize {
        self.radj[b].count()
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        (0..self.left_size()).map(|a| self.left_degree(a)).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        (0..self.right_size()).map(|b| self.right_degree(b)).collect()
    }

    /// `ρ` when both classes have size `n` and every vertex has degree `ρ`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.left_size() != self.right_size() {
            return None;
        }
        let rho = if self.left_size() == 0 { 0 } else { self.left_degree(0) };
        let ok = (0..self.left_size()).all(|a| self.left_degree(a) == rho)
            && (0..self.right_size()).all(|b| self.right_degree(b) == rho);
        ok.then_some(rho)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.left_size()).flat_map(|a| self.adj[a].iter().map(move |b| (a, b))).collect()
    }

    /// Sorted neighbour lists of the left vertices.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        self.adj.iter().map(|r| r.iter().collect()).collect()
    }

    /// `e(A,B) / (|A||B|)`, zero for an empty class.
    pub fn density(&self) -> f64 {
        let cells = self.left_size() * self.right_size();
        if cells == 0 {
            0.0
        } else {
            self.edge_count as f64 / cells as f64
        }
    }

    pub fn edges_between(&self, xs: &[usize], ys: &[usize]) -> usize {
        let mut mask = BitRow::new(self.right_size());
        for &y in ys {
            mask.insert(y);
        }
        xs.iter().map(|&x| self.adj[x].intersection_count(&mask)).sum()
    }

    /// `d(X, Y)`; zero when either set is empty.
    pub fn subset_density(&self, xs: &[usize], ys: &[usize]) -> f64 {
        if xs.is_empty() || ys.is_empty() {
            0.0
        } else {
            self.edges_between(xs, ys) as f64 / (xs.len() * ys.len()) as f64
        }
    }

    /// Induced pair on `xs × ys`, relabelled in the given orders.
    pub fn induced(&self, xs: &[usize], ys: &[usize]) -> BipartiteGraph {
        let mut b = BipartiteGraph::empty(xs.len(), ys.len());
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in ys.iter().enumerate() {
                if self.has_edge(x, y) {
                    b.add_edge(i, j);
                }
            }
        }
        b
    }

    /// True when every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &BipartiteGraph) -> bool {
        self.left_size() == other.left_size()
            && self.right_size() == other.right_size()
            && self.edges().into_iter().all(|(a, b)| other.has_edge(a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_cover_degrees_follow_semidegrees() {
        let g = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = BipartiteGraph::double_cover(&g);
        assert_eq!(b.edge_count(), 3);
        assert_eq!(b.regular_degree(), Some(1));
        assert_eq!(BipartiteGraph::double_cover(&Digraph::empty(4)).edge_count(), 0);
    }

    #[test]
    fn densities() {
        let b = BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1)]);
        assert_eq!(b.density(), 0.5);
        assert_eq!(b.subset_density(&[0], &[0, 1]), 1.0);
        assert_eq!(b.subset_density(&[1], &[0, 1]), 0.0);
        assert_eq!(b.induced(&[0], &[1]).edge_count(), 1);
    }
}
