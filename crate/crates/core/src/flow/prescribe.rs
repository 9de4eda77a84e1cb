use serde::{Deserialize, Serialize};

use super::{max_flow, FlowError, FlowNetwork};
use crate::bipartite::BipartiteGraph;
use crate::graph::Digraph;

/// Target degree `τ` less per-vertex deficits: left vertex `i` must end with
/// degree `τ − x_i` and right vertex `j` with `τ − y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreePrescription {
    pub tau: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl DegreePrescription {
    pub fn new(tau: usize, x: Vec<usize>, y: Vec<usize>) -> Result<Self, FlowError> {
        let (sx, sy) = (x.iter().sum::<usize>(), y.iter().sum::<usize>());
        if sx != sy {
            return Err(FlowError::PrescriptionUnbalanced { left: sx, right: sy });
        }
        if let Some(i) = x.iter().chain(&y).position(|&d| d > tau) {
            return Err(FlowError::PrescriptionOutOfRange { index: i, cap: tau });
        }
        Ok(DegreePrescription { tau, x, y })
    }

    /// `τ = ⌊(1−α)βm⌋` with every deficit at most `⌊α′βm⌋`.
    pub fn from_fractions(m: usize, alpha: f64, alpha_prime: f64, beta: f64, x: Vec<usize>, y: Vec<usize>) -> Result<Self, FlowError> {
        let tau = ((1.0 - alpha) * beta * m as f64 + 1e-9).floor() as usize;
        let cap = deficit_cap(m, alpha_prime, beta);
        if let Some(i) = x.iter().chain(&y).position(|&d| d > cap) {
            return Err(FlowError::PrescriptionOutOfRange { index: i, cap });
        }
        DegreePrescription::new(tau, x, y)
    }

    /// `c_i = τ − x_i`.
    pub fn left_target(&self, i: usize) -> usize {
        self.tau - self.x[i]
    }

    /// `d_j = τ − y_j`.
    pub fn right_target(&self, j: usize) -> usize {
        self.tau - self.y[j]
    }
}

/// `⌊α′βm⌋`.
pub fn deficit_cap(m: usize, alpha_prime: f64, beta: f64) -> usize {
    (alpha_prime * beta * m as f64 + 1e-9).floor() as usize
}

/// Minimum `(s,t)`-cut of an infeasible prescription: `S₁ ⊆ A` and `S₂ ⊆ B`
/// are the class vertices on the source side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub cut_capacity: usize,
    /// `Σ c_i`, the flow value a feasible prescription reaches.
    pub required: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prescribed {
    Feasible(BipartiteGraph),
    Infeasible(CutWitness),
}

/// Spanning subgraph of `pair` in which left vertex `i` has degree `τ − x_i`
/// and right vertex `j` degree `τ − y_j`, or the minimum cut showing that no
/// such subgraph exists.
pub fn prescribed_subgraph(pair: &BipartiteGraph, p: &DegreePrescription) -> Result<Prescribed, FlowError> {
    let (ml, mr) = (pair.left_size(), pair.right_size());
    if p.x.len() != ml || p.y.len() != mr {
        return Err(FlowError::SizeMismatch { left: ml, right: mr, x: p.x.len(), y: p.y.len() });
    }
    let sx: usize = p.x.iter().sum();
    let sy: usize = p.y.iter().sum();
    if sx != sy {
        return Err(FlowError::PrescriptionUnbalanced { left: sx, right: sy });
    }
    let (s, t) = (0, 1 + ml + mr);
    let u = |i: usize| 1 + i;
    let v = |j: usize| 1 + ml + j;
    let mut net = FlowNetwork::<crate::Cap>::new(ml + mr + 2, s, t)?;
    for i in 0..ml {
        net.add_arc(s, u(i), p.left_target(i) as i64)?;
    }
    let first_pair_arc = net.arc_count();
    let edges = pair.edges();
    for &(a, b) in &edges {
        net.add_arc(u(a), v(b), 1)?;
    }
    for j in 0..mr {
        net.add_arc(v(j), t, p.right_target(j) as i64)?;
    }
    let required: usize = (0..ml).map(|i| p.left_target(i)).sum();
    let flow = max_flow(&net);
    if flow.value as usize == required && (0..mr).map(|j| p.right_target(j)).sum::<usize>() == required {
        let mut out = BipartiteGraph::empty(ml, mr);
        for (k, &(a, b)) in edges.iter().enumerate() {
            if flow.arc_flows[first_pair_arc + k] == 1 {
                out.add_edge(a, b);
            }
        }
        debug_assert!((0..ml).all(|i| out.left_degree(i) == p.left_target(i)));
        debug_assert!((0..mr).all(|j| out.right_degree(j) == p.right_target(j)));
        return Ok(Prescribed::Feasible(out));
    }
    let s1: Vec<usize> = (0..ml).filter(|&i| flow.source_side[u(i)]).collect();
    let s2: Vec<usize> = (0..mr).filter(|&j| flow.source_side[v(j)]).collect();
    Ok(Prescribed::Infeasible(CutWitness { s1, s2, cut_capacity: flow.value as usize, required }))
}

/// One blown-up pair: `pair` joins the global vertices `left[i] → right[j]`;
/// `x[i]` and `y[j]` are the red out- and in-degrees those vertices carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupPair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub pair: BipartiteGraph,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

/// Union of a prescribed subgraph in every pair with the red edges, checked
/// to be `τ`-regular on `n` vertices.
///
/// Pair edges that coincide with a red edge are withheld from the flow so
/// the union stays simple. `red_cap` bounds the red semidegree of any vertex.
pub fn tau_regular_union(
    n: usize,
    blowup: &[BlowupPair],
    red_edges: &[(usize, usize)],
    tau: usize,
    red_cap: Option<usize>,
) -> Result<Digraph, FlowError> {
    let mut red = Digraph::empty(n);
    for &(a, b) in red_edges {
        if !red.add_edge(a, b)? {
            return Err(FlowError::DuplicateEdge { u: a, v: b });
        }
    }
    let mut claimed_out = vec![0usize; n];
    let mut claimed_in = vec![0usize; n];
    for (k, bp) in blowup.iter().enumerate() {
        if bp.x.iter().sum::<usize>() != bp.y.iter().sum::<usize>() {
            return Err(FlowError::UnbalancedRedEdges { pair: k });
        }
        for (&v, &x) in bp.left.iter().zip(&bp.x) {
            claimed_out[v] += x;
        }
        for (&v, &y) in bp.right.iter().zip(&bp.y) {
            claimed_in[v] += y;
        }
    }
    for v in 0..n {
        let (ro, ri) = (red.out_degree(v), red.in_degree(v));
        if ro != claimed_out[v] || ri != claimed_in[v] {
            return Err(FlowError::RedDegreeMismatch { vertex: v, red_out: ro, red_in: ri, x: claimed_out[v], y: claimed_in[v] });
        }
        if let Some(cap) = red_cap {
            if ro.max(ri) > cap {
                return Err(FlowError::RedDegreeExceedsCap { vertex: v, degree: ro.max(ri), cap });
            }
        }
    }

    let mut union = red.clone();
    for (k, bp) in blowup.iter().enumerate() {
        let mut pair = bp.pair.clone();
        for (i, &a) in bp.left.iter().enumerate() {
            for (j, &b) in bp.right.iter().enumerate() {
                if red.has_edge(a, b) {
                    pair.remove_edge(i, j);
                }
            }
        }
        let p = DegreePrescription::new(tau, bp.x.clone(), bp.y.clone())?;
        match prescribed_subgraph(&pair, &p)? {
            Prescribed::Feasible(sub) => {
                for (i, j) in sub.edges() {
                    let (a, b) = (bp.left[i], bp.right[j]);
                    if !union.add_edge(a, b)? {
                        return Err(FlowError::DuplicateEdge { u: a, v: b });
                    }
                }
            }
            Prescribed::Infeasible(witness) => return Err(FlowError::PairInfeasible { pair: k, witness }),
        }
    }
    for v in 0..n {
        let (o, i) = (union.out_degree(v), union.in_degree(v));
        if o != tau || i != tau {
            return Err(FlowError::NotRegularUnion { vertex: v, out: o, inn: i, tau });
        }
    }
    Ok(union)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feasible(r: Prescribed) -> BipartiteGraph {
        match r {
            Prescribed::Feasible(b) => b,
            Prescribed::Infeasible(w) => panic!("infeasible: {w:?}"),
        }
    }

    #[test]
    fn complete_pair_all_zero_deficits() {
        let p = DegreePrescription::new(8, vec![0; 10], vec![0; 10]).unwrap();
        let sub = feasible(prescribed_subgraph(&BipartiteGraph::complete(10, 10), &p).unwrap());
        assert!(sub.left_degrees().iter().chain(&sub.right_degrees()).all(|&d| d == 8));
    }

    #[test]
    fn complete_pair_one_deficit_each_side() {
        let mut x = vec![0; 10];
        x[0] = 1;
        let p = DegreePrescription::new(8, x.clone(), x).unwrap();
        let sub = feasible(prescribed_subgraph(&BipartiteGraph::complete(10, 10), &p).unwrap());
        assert_eq!(sub.edge_count(), 79);
        assert_eq!((sub.left_degree(0), sub.right_degree(0)), (7, 7));
        assert!((1..10).all(|i| sub.left_degree(i) == 8 && sub.right_degree(i) == 8));
    }

    #[test]
    fn perfect_matching_cannot_carry_degree_two() {
        let pair = BipartiteGraph::from_edges(4, 4, &[(0, 0), (1, 1), (2, 2), (3, 3)]);
        let p = DegreePrescription::new(2, vec![0; 4], vec![0; 4]).unwrap();
        match prescribed_subgraph(&pair, &p).unwrap() {
            Prescribed::Infeasible(w) => {
                assert_eq!(w.required, 8);
                assert_eq!(w.cut_capacity, 4);
            }
            Prescribed::Feasible(_) => panic!("max degree 1 cannot reach 2"),
        }
    }

    #[test]
    fn unbalanced_prescription_rejected() {
        assert_eq!(
            DegreePrescription::new(3, vec![1, 0], vec![0, 0]).unwrap_err(),
            FlowError::PrescriptionUnbalanced { left: 1, right: 0 }
        );
    }

    fn blown_up_triangle(m: usize) -> Vec<BlowupPair> {
        (0..3)
            .map(|c| BlowupPair {
                left: (c * m..(c + 1) * m).collect(),
                right: (((c + 1) % 3) * m..((c + 1) % 3 + 1) * m).collect(),
                pair: BipartiteGraph::complete(m, m),
                x: vec![0; m],
                y: vec![0; m],
            })
            .collect()
    }

    #[test]
    fn blown_up_triangle_is_five_regular() {
        let g = tau_regular_union(24, &blown_up_triangle(8), &[], 5, None).unwrap();
        let p = g.semidegrees();
        assert_eq!((p.min, p.max), (5, 5));
        assert!(g.is_oriented());
    }

    #[test]
    fn single_pair_union_is_the_prescribed_subgraph() {
        // The double cover of a digraph, read back with left = right = V(G).
        let host = crate::graph::generate::regular_circulant(7).unwrap();
        let cover = BipartiteGraph::double_cover(host.as_digraph());
        let pres = DegreePrescription::new(2, vec![0; 7], vec![0; 7]).unwrap();
        let sub = feasible(prescribed_subgraph(&cover, &pres).unwrap());
        let bp = BlowupPair { left: (0..7).collect(), right: (0..7).collect(), pair: cover, x: vec![0; 7], y: vec![0; 7] };
        let g = tau_regular_union(7, &[bp], &[], 2, None).unwrap();
        assert_eq!(g.edges(), sub.edges());
    }

    #[test]
    fn one_sided_pair_is_not_regular() {
        let bp = BlowupPair { left: vec![0, 1, 2], right: vec![3, 4, 5], pair: BipartiteGraph::complete(3, 3), x: vec![0; 3], y: vec![0; 3] };
        let err = tau_regular_union(6, &[bp], &[], 1, None).unwrap_err();
        assert!(matches!(err, FlowError::NotRegularUnion { .. }));
    }

    #[test]
    fn red_edge_survives_into_union() {
        let m = 8;
        let mut pairs = blown_up_triangle(m);
        let (u, w) = (0, m + 3);
        pairs[0].x[0] = 1;
        pairs[0].y[3] = 1;
        let g = tau_regular_union(3 * m, &pairs, &[(u, w)], 5, Some(1)).unwrap();
        assert!(g.has_edge(u, w));
        let p = g.semidegrees();
        assert_eq!((p.min, p.max), (5, 5));
    }

    #[test]
    fn red_edges_must_match_the_deficits() {
        let m = 8;
        let pairs = blown_up_triangle(m);
        let err = tau_regular_union(3 * m, &pairs, &[(0, m + 3)], 5, None).unwrap_err();
        assert!(matches!(err, FlowError::RedDegreeMismatch { vertex: 0, .. }));
        let mut pairs = blown_up_triangle(m);
        pairs[0].x[0] = 1;
        assert_eq!(tau_regular_union(3 * m, &pairs, &[], 5, None).unwrap_err(), FlowError::UnbalancedRedEdges { pair: 0 });
    }
}
