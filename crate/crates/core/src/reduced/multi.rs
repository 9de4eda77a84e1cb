use serde::{Deserialize, Serialize};

use super::{ReducedError, RegularityParams};
use crate::graph::Digraph;
use crate::scalar::floor_ratio;

/// The `index`-th parallel edge from cluster `from` to cluster `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiEdge {
    pub from: usize,
    pub to: usize,
    pub index: usize,
}

/// Cluster-level multidigraph with `mult(i, j)` parallel edges `i → j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedMultiDigraph {
    mult: Vec<Vec<usize>>,
    /// Edge counts `e(V_i, V_j)` when built from a digraph.
    pair_edges: Option<Vec<Vec<usize>>>,
    cluster_size: usize,
}

impl ReducedMultiDigraph {
    /// A square loopless multiplicity matrix.
    pub fn from_multiplicities(mult: Vec<Vec<usize>>) -> Result<Self, ReducedError> {
        let l = mult.len();
        if mult.iter().any(|row| row.len() != l) {
            return Err(ReducedError::InvalidParameter("multiplicity matrix must be square".into()));
        }
        if let Some(i) = (0..l).find(|&i| mult[i][i] != 0) {
            return Err(ReducedError::InvalidParameter(format!("loop at cluster {i}")));
        }
        Ok(ReducedMultiDigraph { mult, pair_edges: None, cluster_size: 0 })
    }

    /// From `(i, j, mult)` lines; repeated pairs add up.
    pub fn from_entries(l: usize, entries: &[(usize, usize, usize)]) -> Result<Self, ReducedError> {
        let mut mult = vec![vec![0; l]; l];
        for &(i, j, k) in entries {
            if i >= l || j >= l {
                return Err(ReducedError::InvalidParameter(format!("pair ({i},{j}) out of range for L = {l}")));
            }
            mult[i][j] += k;
        }
        Self::from_multiplicities(mult)
    }

    /// Nonzero multiplicities as `(i, j, mult)`, row-major.
    pub fn entries(&self) -> Vec<(usize, usize, usize)> {
        let l = self.order();
        (0..l).flat_map(|i| (0..l).map(move |j| (i, j))).filter(|&(i, j)| self.mult[i][j] > 0).map(|(i, j)| (i, j, self.mult[i][j])).collect()
    }

    /// Number of clusters `L`.
    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn cluster_size(&self) -> usize {
        self.cluster_size
    }

    #[inline]
    pub fn mult(&self, i: usize, j: usize) -> usize {
        self.mult[i][j]
    }

    /// Exact density `e(V_i, V_j)/m²` when built from a digraph.
    pub fn density(&self, i: usize, j: usize) -> Option<f64> {
        let m = self.cluster_size;
        self.pair_edges.as_ref().map(|e| e[i][j] as f64 / (m * m) as f64)
    }

    pub fn pair_edge_count(&self, i: usize, j: usize) -> Option<usize> {
        self.pair_edges.as_ref().map(|e| e[i][j])
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.mult[i].iter().sum()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        self.mult.iter().map(|row| row[j]).sum()
    }

    pub fn min_semidegree(&self) -> usize {
        (0..self.order()).map(|i| self.out_degree(i).min(self.in_degree(i))).min().unwrap_or(0)
    }

    pub fn max_semidegree(&self) -> usize {
        (0..self.order()).map(|i| self.out_degree(i).max(self.in_degree(i))).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.mult.iter().flatten().sum()
    }

    /// Every parallel edge, ordered by `(from, to, index)`.
    pub fn edges(&self) -> impl Iterator<Item = MultiEdge> + '_ {
        let l = self.order();
        (0..l).flat_map(move |from| {
            (0..l).flat_map(move |to| (0..self.mult[from][to]).map(move |index| MultiEdge { from, to, index }))
        })
    }

    /// `Σ mult(i, j)` over `i ∈ a`, `j ∈ b`.
    pub fn edges_between(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter().map(|&i| b.iter().map(|&j| self.mult[i][j]).sum::<usize>()).sum()
    }

    /// `δ⁰(R_m[X])`.
    pub fn induced_min_semidegree(&self, x: &[usize]) -> usize {
        x.iter().map(|&i| self.edges_between(&[i], x).min(self.edges_between(x, &[i]))).min().unwrap_or(0)
    }

    /// True when `mult(i,j) + mult(j,i) ≤ ⌊1/β⌋` for every pair.
    pub fn pair_cap_holds(&self, beta: f64) -> bool {
        let cap = floor_ratio(1, 1, beta);
        let l = self.order();
        (0..l).all(|i| (i + 1..l).all(|j| self.mult[i][j] + self.mult[j][i] <= cap))
    }

    /// The underlying simple digraph: `i → j` iff `mult(i, j) > 0`.
    pub fn support(&self) -> Digraph {
        let l = self.order();
        let edges: Vec<(usize, usize)> =
            (0..l).flat_map(|i| (0..l).map(move |j| (i, j))).filter(|&(i, j)| i != j && self.mult[i][j] > 0).collect();
        Digraph::from_edges(l, &edges).expect("support is loopless")
    }
}

/// Reduced multidigraph of `g` over `partition`: `⌊d_ij/β⌋` edges `i → j`
/// whenever `d_ij ≥ d`, with `d_ij` counted exactly from `g`.
pub fn build_reduced_multidigraph(g: &Digraph, partition: &[Vec<usize>], p: &RegularityParams) -> Result<ReducedMultiDigraph, ReducedError> {
    p.validate()?;
    let l = partition.len();
    let m = partition.first().map_or(0, Vec::len);
    if m == 0 {
        return Err(ReducedError::InvalidPartition("clusters must be non-empty".into()));
    }
    let mut cluster_of = vec![usize::MAX; g.n()];
    for (c, cluster) in partition.iter().enumerate() {
        if cluster.len() != m {
            return Err(ReducedError::UnequalClusters { cluster: c, size: cluster.len(), expected: m });
        }
        for &v in cluster {
            if v >= g.n() {
                return Err(ReducedError::InvalidPartition(format!("vertex {v} out of range")));
            }
            if cluster_of[v] != usize::MAX {
                return Err(ReducedError::InvalidPartition(format!("vertex {v} lies in two clusters")));
            }
            cluster_of[v] = c;
        }
    }
    let mut pair_edges = vec![vec![0usize; l]; l];
    for (u, v) in g.edges() {
        let (cu, cv) = (cluster_of[u], cluster_of[v]);
        if cu != usize::MAX && cv != usize::MAX {
            pair_edges[cu][cv] += 1;
        }
    }
    let cells = m * m;
    let mut mult = vec![vec![0usize; l]; l];
    for i in 0..l {
        for j in 0..l {
            let e = pair_edges[i][j];
            if i != j && e as f64 >= p.d * cells as f64 - 1e-9 {
                mult[i][j] = floor_ratio(e, cells, p.beta);
            }
        }
    }
    Ok(ReducedMultiDigraph { mult, pair_edges: Some(pair_edges), cluster_size: m })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeCount {
    pub count: usize,
    pub bound: f64,
    pub holds: bool,
}

/// Counts the edges from `a` to `b` and compares with `|X|²/(60β)`.
///
/// Checks first that `A, B ⊆ X`, `|A|, |B| ≥ (1/2 - c)|X|`,
/// `δ⁰(R_m[X]) ≥ (1/2 - c)|X|/β` and that no pair inside `X` carries more
/// than `⌊1/β⌋` edges in total.
pub fn edge_count_check(rm: &ReducedMultiDigraph, x: &[usize], a: &[usize], b: &[usize], beta: f64, c: f64) -> Result<EdgeCount, ReducedError> {
    let l = rm.order();
    let mut in_x = vec![false; l];
    for &i in x {
        if i >= l || std::mem::replace(&mut in_x[i], true) {
            return Err(ReducedError::HypothesisViolated(format!("X has an invalid or repeated cluster {i}")));
        }
    }
    if let Some(&i) = a.iter().chain(b).find(|&&i| i >= l || !in_x[i]) {
        return Err(ReducedError::HypothesisViolated(format!("cluster {i} is not in X")));
    }
    let xf = x.len() as f64;
    let min_side = (0.5 - c) * xf;
    if (a.len() as f64) < min_side - 1e-9 || (b.len() as f64) < min_side - 1e-9 {
        return Err(ReducedError::HypothesisViolated(format!("|A| = {}, |B| = {} below (1/2-c)|X| = {min_side}", a.len(), b.len())));
    }
    let need = min_side / beta;
    let have = rm.induced_min_semidegree(x);
    if (have as f64) < need - 1e-9 {
        return Err(ReducedError::HypothesisViolated(format!("semidegree of R_m[X] is {have}, need {need}")));
    }
    let cap = floor_ratio(1, 1, beta);
    for (p, &i) in x.iter().enumerate() {
        if let Some(&j) = x[p + 1..].iter().find(|&&j| rm.mult(i, j) + rm.mult(j, i) > cap) {
            return Err(ReducedError::HypothesisViolated(format!("pair ({i},{j}) carries more than {cap} edges")));
        }
    }
    let count = rm.edges_between(a, b);
    let bound = xf * xf / (60.0 * beta);
    Ok(EdgeCount { count, bound, holds: count as f64 >= bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(beta: f64, d: f64) -> RegularityParams {
        RegularityParams { beta, d, ..RegularityParams::default() }
    }

    #[test]
    fn empty_graph_gives_zero_multiplicities() {
        let g = Digraph::empty(6);
        let rm = build_reduced_multidigraph(&g, &[vec![0, 1], vec![2, 3], vec![4, 5]], &params(0.05, 0.1)).unwrap();
        assert_eq!(rm.edge_count(), 0);
    }

    #[test]
    fn complete_pair_multiplicity() {
        let mut g = Digraph::empty(6);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v).unwrap();
            }
        }
        let rm = build_reduced_multidigraph(&g, &[vec![0, 1, 2], vec![3, 4, 5]], &params(0.3, 0.1)).unwrap();
        assert_eq!((rm.mult(0, 1), rm.mult(1, 0)), (3, 0));
        assert_eq!(rm.density(0, 1), Some(1.0));
    }

    #[test]
    fn partition_errors() {
        let g = Digraph::empty(5);
        let p = params(0.1, 0.1);
        assert!(matches!(build_reduced_multidigraph(&g, &[vec![0, 1], vec![2]], &p), Err(ReducedError::UnequalClusters { .. })));
        assert!(matches!(build_reduced_multidigraph(&g, &[vec![0, 1], vec![1, 2]], &p), Err(ReducedError::InvalidPartition(_))));
    }

    #[test]
    fn capped_complete_r_m_meets_the_bound() {
        let (l, beta) = (10, 0.1);
        let mut mult = vec![vec![0; l]; l];
        for i in 0..l {
            for j in 0..l {
                if i != j {
                    mult[i][j] = 5;
                }
            }
        }
        let rm = ReducedMultiDigraph::from_multiplicities(mult).unwrap();
        let x: Vec<usize> = (0..l).collect();
        let r = edge_count_check(&rm, &x, &x, &x, beta, 0.1).unwrap();
        assert_eq!(r.count, 450);
        assert!(r.holds && r.bound < 450.0);
        let sparse = ReducedMultiDigraph::from_multiplicities(vec![vec![0; l]; l]).unwrap();
        assert!(matches!(edge_count_check(&sparse, &x, &x, &x, beta, 0.1), Err(ReducedError::HypothesisViolated(_))));
    }
}
