use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::ReducedError;
use crate::bipartite::BipartiteGraph;
use crate::rng::{child_rng, rng_from_seed};

/// Retry cap of [`bounded_degree_subgraph`].
pub const BOUNDED_DEGREE_ATTEMPTS: usize = 100;

/// Each edge joins independently with probability `p`.
pub fn random_pair(left: usize, right: usize, p: f64, seed: u64) -> BipartiteGraph {
    let mut rng = rng_from_seed(seed);
    let mut b = BipartiteGraph::empty(left, right);
    for x in 0..left {
        for y in 0..right {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                b.add_edge(x, y);
            }
        }
    }
    b
}

/// A `degree`-regular pair on `m + m` vertices: the circulant pair
/// `x ~ y iff (y - x) mod m < degree`, randomized by `switches` attempted
/// degree-preserving 2-switches.
pub fn regular_pair(m: usize, degree: usize, switches: u64, seed: u64) -> Result<BipartiteGraph, ReducedError> {
    if m == 0 || degree > m {
        return Err(ReducedError::InvalidParameter(format!("degree {degree} impossible on classes of size {m}")));
    }
    let mut b = BipartiteGraph::empty(m, m);
    let mut edges = Vec::with_capacity(m * degree);
    for x in 0..m {
        for j in 0..degree {
            let y = (x + j) % m;
            b.add_edge(x, y);
            edges.push((x, y));
        }
    }
    if edges.len() < 2 {
        return Ok(b);
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..switches {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let ((a1, b1), (a2, b2)) = (edges[i], edges[j]);
        if a1 == a2 || b1 == b2 || b.has_edge(a1, b2) || b.has_edge(a2, b1) {
            continue;
        }
        b.remove_edge(a1, b1);
        b.remove_edge(a2, b2);
        b.add_edge(a1, b2);
        b.add_edge(a2, b1);
        edges[i] = (a1, b2);
        edges[j] = (a2, b1);
    }
    Ok(b)
}

/// Splits the edges of `pair` into `⌊k⌋` edge-disjoint spanning parts. Each
/// edge, in lexicographic order, joins part `i` with probability `1/k` and no
/// part with probability `1 - ⌊k⌋/k`.
pub fn split_pair(pair: &BipartiteGraph, k: f64, seed: u64) -> Result<Vec<BipartiteGraph>, ReducedError> {
    if !(k.is_finite() && k >= 1.0) {
        return Err(ReducedError::InvalidParameter(format!("split count {k} must be at least 1")));
    }
    let parts = k.floor() as usize;
    let mut out = vec![BipartiteGraph::empty(pair.left_size(), pair.right_size()); parts];
    let mut rng = rng_from_seed(seed);
    for (x, y) in pair.edges() {
        let slot = (rng.gen::<f64>() * k) as usize;
        if slot < parts {
            out[slot].add_edge(x, y);
        }
    }
    Ok(out)
}

/// Subclusters of a cycle of pairs after trimming.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrimmedCycle {
    /// Surviving vertices of each cluster, ascending.
    pub subclusters: Vec<Vec<usize>>,
    /// Vertices removed from each cluster because their degree left the window.
    pub bad: Vec<Vec<usize>>,
    /// Pair `t` restricted to `subclusters[t] × subclusters[t+1]`.
    pub pairs: Vec<BipartiteGraph>,
}

/// Pair `t` joins cluster `t` to cluster `t+1 (mod s)`. In every cluster the
/// vertices whose out-degree in the forward pair or in-degree in the backward
/// pair is at most `(β-2ε)m` or at least `(β+2ε)m` are removed, and further
/// vertices with the largest degree deviation until `⌈4εm⌉` are gone. The
/// trimmed pairs are audited for the `(β ± 10ε)m′` degree window.
pub fn trim_super_regular(cycle_pairs: &[BipartiteGraph], eps: f64, beta: f64) -> Result<TrimmedCycle, ReducedError> {
    let s = cycle_pairs.len();
    let m = cycle_pairs.first().map_or(0, BipartiteGraph::left_size);
    if s == 0 || cycle_pairs.iter().any(|p| p.left_size() != m || p.right_size() != m) {
        return Err(ReducedError::InvalidParameter("cycle pairs must be non-empty and m × m".into()));
    }
    let mf = m as f64;
    let removals = {
        let x = 4.0 * eps * mf;
        if (x - x.round()).abs() < 1e-9 { x.round() } else { x.ceil() }
    } as usize;
    if removals > m {
        return Err(ReducedError::InvalidParameter(format!("4εm = {removals} exceeds the cluster size {m}")));
    }
    let (lo, hi) = ((beta - 2.0 * eps) * mf, (beta + 2.0 * eps) * mf);
    let target = beta * mf;

    let mut subclusters = Vec::with_capacity(s);
    let mut bad_sets = Vec::with_capacity(s);
    for t in 0..s {
        let fwd = &cycle_pairs[t];
        let back = &cycle_pairs[(t + s - 1) % s];
        let outside = |d: usize| (d as f64) <= lo || (d as f64) >= hi;
        let bad: Vec<usize> = (0..m).filter(|&v| outside(fwd.left_degree(v)) || outside(back.right_degree(v))).collect();
        if bad.len() > removals {
            return Err(ReducedError::TooManyBadVertices { cluster: t, bad: bad.len(), allowed: removals });
        }
        let mut removed = vec![false; m];
        bad.iter().for_each(|&v| removed[v] = true);
        let deviation = |v: usize| (fwd.left_degree(v) as f64 - target).abs().max((back.right_degree(v) as f64 - target).abs());
        let mut rest: Vec<usize> = (0..m).filter(|&v| !removed[v]).collect();
        rest.sort_by(|&a, &b| deviation(b).total_cmp(&deviation(a)).then(a.cmp(&b)));
        rest.iter().take(removals - bad.len()).for_each(|&v| removed[v] = true);
        subclusters.push((0..m).filter(|&v| !removed[v]).collect::<Vec<_>>());
        bad_sets.push(bad);
    }

    let pairs: Vec<BipartiteGraph> =
        (0..s).map(|t| cycle_pairs[t].induced(&subclusters[t], &subclusters[(t + 1) % s])).collect();
    let mp = (m - removals) as f64;
    let (wlo, whi) = ((beta - 10.0 * eps) * mp, (beta + 10.0 * eps) * mp);
    for (t, p) in pairs.iter().enumerate() {
        let degrees = p.left_degrees().into_iter().chain(p.right_degrees());
        if let Some(d) = degrees.into_iter().find(|&d| (d as f64) < wlo || (d as f64) > whi) {
            return Err(ReducedError::WindowViolated { pair: t, degree: d, lo: wlo, hi: whi });
        }
    }
    Ok(TrimmedCycle { subclusters, bad: bad_sets, pairs })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundedDegreeSubgraph {
    pub graph: BipartiteGraph,
    /// Sampling rounds used, starting at 1.
    pub attempts: usize,
    pub dropped_left: Vec<usize>,
    pub dropped_right: Vec<usize>,
}

/// A subgraph of maximum degree at most `d₀n` and average degree at least
/// `d₀n/8`: vertices of degree at least `2d₁n` lose all their edges, then
/// every remaining edge is kept with probability `d₀/(3d₁)`, resampling
/// with a fresh derived seed until both bounds hold.
pub fn bounded_degree_subgraph(pair: &BipartiteGraph, d0: f64, seed: u64) -> Result<BoundedDegreeSubgraph, ReducedError> {
    let n = pair.left_size();
    if n == 0 || pair.right_size() != n {
        return Err(ReducedError::InvalidParameter("pair classes must be equal and non-empty".into()));
    }
    let d1 = pair.density();
    if !(d0 > 0.0 && d0 <= d1 + 1e-12) {
        return Err(ReducedError::InvalidParameter(format!("need 0 < d0 <= d1, got d0={d0}, d1={d1}")));
    }
    let nf = n as f64;
    let heavy = 2.0 * d1 * nf;
    let dropped_left: Vec<usize> = (0..n).filter(|&a| pair.left_degree(a) as f64 >= heavy).collect();
    let dropped_right: Vec<usize> = (0..n).filter(|&b| pair.right_degree(b) as f64 >= heavy).collect();
    let (mut gone_l, mut gone_r) = (vec![false; n], vec![false; n]);
    dropped_left.iter().for_each(|&a| gone_l[a] = true);
    dropped_right.iter().for_each(|&b| gone_r[b] = true);
    let kept: Vec<(usize, usize)> = pair.edges().into_iter().filter(|&(a, b)| !gone_l[a] && !gone_r[b]).collect();
    let p = (d0 / (3.0 * d1)).min(1.0);

    for attempt in 0..BOUNDED_DEGREE_ATTEMPTS {
        let mut rng = child_rng(seed, attempt as u64);
        let edges: Vec<(usize, usize)> = kept.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        let h = BipartiteGraph::from_edges(n, n, &edges);
        let max_deg = h.left_degrees().into_iter().chain(h.right_degrees()).max().unwrap_or(0);
        let avg = h.edge_count() as f64 / nf;
        if max_deg as f64 <= d0 * nf && avg >= d0 * nf / 8.0 {
            return Ok(BoundedDegreeSubgraph { graph: h, attempts: attempt + 1, dropped_left, dropped_right });
        }
    }
    Err(ReducedError::RetryBudgetExhausted { attempts: BOUNDED_DEGREE_ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_with_k_one_keeps_everything() {
        let b = random_pair(30, 30, 0.4, 2);
        let parts = split_pair(&b, 1.0, 9).unwrap();
        assert_eq!(parts, vec![b]);
        assert!(split_pair(&BipartiteGraph::complete(2, 2), 0.5, 0).is_err());
    }

    #[test]
    fn split_parts_are_disjoint_and_inside() {
        let b = BipartiteGraph::complete(40, 40);
        let parts = split_pair(&b, 2.5, 4).unwrap();
        assert_eq!(parts.len(), 2);
        for (x, y) in b.edges() {
            assert!(parts.iter().filter(|p| p.has_edge(x, y)).count() <= 1);
        }
        assert!(parts.iter().all(|p| p.is_subgraph_of(&b)));
        let unassigned = b.edge_count() - parts.iter().map(BipartiteGraph::edge_count).sum::<usize>();
        assert!(unassigned > 0);
    }

    #[test]
    fn regular_pair_stays_regular() {
        let b = regular_pair(40, 12, 5000, 1).unwrap();
        assert_eq!(b.regular_degree(), Some(12));
        assert_ne!(b, regular_pair(40, 12, 0, 1).unwrap());
    }

    #[test]
    fn trim_of_regular_cycle_removes_padding_only() {
        let pairs: Vec<_> = (0..3).map(|i| regular_pair(50, 15, 20_000, i).unwrap()).collect();
        let t = trim_super_regular(&pairs, 0.02, 0.3).unwrap();
        assert!(t.bad.iter().all(Vec::is_empty));
        assert!(t.subclusters.iter().all(|c| c.len() == 46));
    }

    #[test]
    fn planted_low_degree_vertices_go_first() {
        let mut pairs: Vec<_> = (0..3).map(|i| regular_pair(50, 15, 20_000, 10 + i).unwrap()).collect();
        // 2εm = 2 low out-degree vertices in cluster 1.
        for v in [11, 37] {
            let ys: Vec<usize> = pairs[1].left_neighbors(v).collect();
            ys.into_iter().take(5).for_each(|y| {
                pairs[1].remove_edge(v, y);
            });
        }
        let t = trim_super_regular(&pairs, 0.02, 0.29).unwrap();
        assert_eq!(t.bad[1], vec![11, 37]);
        assert!(!t.subclusters[1].contains(&11) && !t.subclusters[1].contains(&37));
    }

    #[test]
    fn too_many_bad_vertices() {
        let mut pairs: Vec<_> = (0..2).map(|i| regular_pair(50, 15, 20_000, 20 + i).unwrap()).collect();
        for v in 0..5 {
            let ys: Vec<usize> = pairs[0].left_neighbors(v).collect();
            ys.into_iter().take(6).for_each(|y| {
                pairs[0].remove_edge(v, y);
            });
        }
        assert!(matches!(
            trim_super_regular(&pairs, 0.02, 0.3),
            Err(ReducedError::TooManyBadVertices { cluster: 0, bad: 5, allowed: 4 })
        ));
    }

    #[test]
    fn bounded_degree_on_complete_pair() {
        let b = BipartiteGraph::complete(60, 60);
        let h = bounded_degree_subgraph(&b, 1.0, 5).unwrap();
        assert!(h.graph.is_subgraph_of(&b));
        assert!(h.graph.edge_count() as f64 / 60.0 >= 60.0 / 8.0);
    }

    #[test]
    fn heavy_vertex_is_dropped() {
        let mut b = random_pair(80, 80, 0.2, 6);
        for y in 0..80 {
            b.add_edge(3, y);
        }
        let h = bounded_degree_subgraph(&b, 0.1, 7).unwrap();
        assert_eq!(h.dropped_left, vec![3]);
        assert_eq!(h.graph.left_degree(3), 0);
    }
}
