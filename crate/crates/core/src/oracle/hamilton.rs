use serde::{Deserialize, Serialize};

use super::OracleError;
use crate::decompose::verify_decomposition;
use crate::graph::{Digraph, RegularTournament};

/// Largest order accepted by [`hamilton_cycle_exists`].
pub const HELD_KARP_LIMIT: usize = 20;
/// Largest order accepted by the exhaustive decomposition searches.
pub const DECOMPOSITION_LIMIT: usize = 9;
/// Largest order accepted by [`max_edge_disjoint_hamilton_cycles`].
pub const PACKING_LIMIT: usize = 7;

/// Held–Karp over (visited set, endpoint) states of paths starting at 0.
/// Graphs on fewer than two vertices have no Hamilton cycle.
pub fn hamilton_cycle_exists(g: &Digraph) -> Result<bool, OracleError> {
    let n = g.n();
    if n > HELD_KARP_LIMIT {
        return Err(OracleError::TooLarge { n, limit: HELD_KARP_LIMIT });
    }
    if n < 2 {
        return Ok(false);
    }
    let out: Vec<u32> = (0..n).map(|u| g.out_neighbors(u).fold(0u32, |m, v| m | 1 << v)).collect();
    // ends[mask] holds the endpoints of paths from 0 that visit exactly `mask`.
    let mut ends = vec![0u32; 1 << n];
    ends[1] = 1;
    for mask in (1..1usize << n).step_by(2) {
        let mut e = ends[mask];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = out[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let full = (1usize << n) - 1;
    let into_zero = (0..n).filter(|&v| g.has_edge(v, 0)).fold(0u32, |m, v| m | 1 << v);
    Ok(ends[full] & into_zero != 0)
}

/// Every Hamilton cycle of `g`, each listed from vertex 0, in lexicographic
/// order.
pub fn hamilton_cycles(g: &Digraph) -> Result<Vec<Vec<usize>>, OracleError> {
    let n = g.n();
    if n > DECOMPOSITION_LIMIT {
        return Err(OracleError::TooLarge { n, limit: DECOMPOSITION_LIMIT });
    }
    let mut found = Vec::new();
    if n < 2 {
        return Ok(found);
    }
    let mut path = vec![0];
    let mut visited = vec![false; n];
    visited[0] = true;
    extend(g, &mut path, &mut visited, &mut found);
    Ok(found)
}

fn extend(g: &Digraph, path: &mut Vec<usize>, visited: &mut [bool], found: &mut Vec<Vec<usize>>) {
    let last = *path.last().expect("path starts at 0");
    if path.len() == g.n() {
        if g.has_edge(last, 0) {
            found.push(path.clone());
        }
        return;
    }
    for v in g.out_neighbors(last).collect::<Vec<_>>() {
        if !visited[v] {
            visited[v] = true;
            path.push(v);
            extend(g, path, visited, found);
            path.pop();
            visited[v] = false;
        }
    }
}

fn edge_mask(cycle: &[usize], n: usize) -> u128 {
    (0..cycle.len()).fold(0, |m, k| m | 1u128 << (cycle[k] * n + cycle[(k + 1) % cycle.len()]))
}

fn graph_mask(g: &Digraph) -> u128 {
    g.edges().into_iter().fold(0, |m, (u, v)| m | 1u128 << (u * g.n() + v))
}

/// Exact cover of all edges of `g` by Hamilton cycles. Branches on the
/// lowest uncovered edge, so each decomposition is found at most once.
fn exact_cover(g: &Digraph) -> Result<Option<Vec<Vec<usize>>>, OracleError> {
    let n = g.n();
    let cycles = hamilton_cycles(g)?;
    let masks: Vec<u128> = cycles.iter().map(|c| edge_mask(c, n)).collect();
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); n * n];
    for (i, &m) in masks.iter().enumerate() {
        let mut rest = m;
        while rest != 0 {
            by_edge[rest.trailing_zeros() as usize].push(i);
            rest &= rest - 1;
        }
    }
    fn search(remaining: u128, masks: &[u128], by_edge: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
        if remaining == 0 {
            return true;
        }
        let e = remaining.trailing_zeros() as usize;
        for &i in &by_edge[e] {
            if masks[i] & !remaining == 0 {
                chosen.push(i);
                if search(remaining & !masks[i], masks, by_edge, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !search(graph_mask(g), &masks, &by_edge, &mut chosen) {
        return Ok(None);
    }
    let out: Vec<Vec<usize>> = chosen.into_iter().map(|i| cycles[i].clone()).collect();
    let verdict = verify_decomposition(g, &out);
    assert!(verdict.valid, "exact cover produced an invalid decomposition: {verdict:?}");
    Ok(Some(out))
}

/// A decomposition of `t` into `(n-1)/2` edge-disjoint Hamilton cycles, or
/// `None` when there is none.
pub fn exhaustive_hamilton_decomposition(t: &RegularTournament) -> Result<Option<Vec<Vec<usize>>>, OracleError> {
    exact_cover(t)
}

/// A decomposition of the complete digraph on `n` vertices into `n - 1`
/// Hamilton cycles, or `None` when there is none.
pub fn complete_digraph_decomposition(n: usize) -> Result<Option<Vec<Vec<usize>>>, OracleError> {
    if n > PACKING_LIMIT {
        return Err(OracleError::TooLarge { n, limit: PACKING_LIMIT });
    }
    if n < 2 {
        return Ok(Some(Vec::new()));
    }
    exact_cover(&Digraph::complete(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonPacking {
    pub count: usize,
    pub cycles: Vec<Vec<usize>>,
}

/// Maximum number of edge-disjoint Hamilton cycles in `g`, by branch and
/// bound over the Hamilton cycle list.
pub fn max_edge_disjoint_hamilton_cycles(g: &Digraph) -> Result<HamiltonPacking, OracleError> {
    let n = g.n();
    if n > PACKING_LIMIT {
        return Err(OracleError::TooLarge { n, limit: PACKING_LIMIT });
    }
    let cycles = hamilton_cycles(g)?;
    let masks: Vec<u128> = cycles.iter().map(|c| edge_mask(c, n)).collect();
    let free = graph_mask(g);

    struct Search<'a> {
        masks: &'a [u128],
        n: usize,
        best: Vec<usize>,
        chosen: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, from: usize, free: u128) {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            let by_edges = free.count_ones() as usize / self.n.max(1);
            let bound = self.chosen.len() + by_edges.min(self.masks.len() - from);
            if bound <= self.best.len() {
                return;
            }
            for i in from..self.masks.len() {
                if self.masks[i] & !free == 0 {
                    self.chosen.push(i);
                    self.run(i + 1, free & !self.masks[i]);
                    self.chosen.pop();
                }
            }
        }
    }
    let mut s = Search { masks: &masks, n, best: Vec::new(), chosen: Vec::new() };
    s.run(0, free);
    let cycles: Vec<Vec<usize>> = s.best.iter().map(|&i| cycles[i].clone()).collect();
    Ok(HamiltonPacking { count: cycles.len(), cycles })
}
