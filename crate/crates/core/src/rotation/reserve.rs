use std::collections::VecDeque;

use crate::bitset::BitRow;
use crate::graph::Digraph;

/// The mutable reserve of green edges.
///
/// Neighbours are kept in arrival order per vertex, so scans see the oldest
/// reserve edge first and edges credited back by an exchange go last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReserveGraph {
    out: Vec<VecDeque<usize>>,
    inn: Vec<VecDeque<usize>>,
    member: Vec<BitRow>,
    edge_count: usize,
}

impl ReserveGraph {
    pub fn empty(n: usize) -> Self {
        ReserveGraph { out: vec![VecDeque::new(); n], inn: vec![VecDeque::new(); n], member: vec![BitRow::new(n); n], edge_count: 0 }
    }

    pub fn from_digraph(g: &Digraph) -> Self {
        let mut r = ReserveGraph::empty(g.n());
        for (u, v) in g.edges() {
            r.insert(u, v);
        }
        r
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.member[u].contains(v)
    }

    /// Appends `u → v`; false if already present.
    pub fn insert(&mut self, u: usize, v: usize) -> bool {
        if u == v || !self.member[u].insert(v) {
            return false;
        }
        self.out[u].push_back(v);
        self.inn[v].push_back(u);
        self.edge_count += 1;
        true
    }

    pub fn remove(&mut self, u: usize, v: usize) -> bool {
        if !self.member[u].remove(v) {
            return false;
        }
        let i = self.out[u].iter().position(|&x| x == v).expect("membership and lists agree");
        self.out[u].remove(i);
        let j = self.inn[v].iter().position(|&x| x == u).expect("membership and lists agree");
        self.inn[v].remove(j);
        self.edge_count -= 1;
        true
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[u].iter().copied()
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[v].iter().copied()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    /// `min(δ⁺, δ⁻)`, zero on the empty vertex set.
    pub fn min_semidegree(&self) -> usize {
        (0..self.n()).map(|v| self.out_degree(v).min(self.in_degree(v))).min().unwrap_or(0)
    }

    pub fn to_digraph(&self) -> Digraph {
        let mut g = Digraph::empty(self.n());
        for u in 0..self.n() {
            for &v in &self.out[u] {
                g.add_edge(u, v).expect("reserve edges are loopless");
            }
        }
        g
    }

    /// True when every edge runs from a cluster to its successor cluster.
    pub fn follows_clusters(&self, cluster_of: &[usize], next_cluster: &[usize]) -> bool {
        (0..self.n()).all(|u| self.out[u].iter().all(|&v| cluster_of[v] == next_cluster[cluster_of[u]]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifo_order_and_membership() {
        let mut r = ReserveGraph::empty(4);
        assert!(r.insert(0, 2));
        assert!(r.insert(0, 1));
        assert!(!r.insert(0, 1));
        assert!(!r.insert(3, 3));
        assert_eq!(r.out_neighbors(0).collect::<Vec<_>>(), vec![2, 1]);
        assert!(r.remove(0, 2));
        assert!(r.insert(0, 2));
        assert_eq!(r.out_neighbors(0).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(r.edge_count(), 2);
        assert_eq!(r.in_neighbors(2).collect::<Vec<_>>(), vec![0]);
        assert_eq!(r.min_semidegree(), 0);
    }
}
