use serde::{Deserialize, Serialize};

use super::ReducedError;
use crate::graph::{CycleSet, Digraph};

/// One full traversal of cycle `cycle`, entered at the successor of `exit`
/// and left at `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSegment {
    pub cycle: usize,
    pub exit: usize,
}

/// A closed shifted walk: traversals joined by edges from the exit of one
/// segment to the entry of the next, the last one back to the first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedWalk {
    pub segments: Vec<WalkSegment>,
    /// Traversals per cycle of `F`.
    pub traversals: Vec<usize>,
}

struct CycleIndex {
    cycle_of: Vec<usize>,
    succ: Vec<usize>,
    pred: Vec<usize>,
}

impl CycleIndex {
    fn new(n: usize, f: &CycleSet) -> Self {
        let mut idx = CycleIndex { cycle_of: vec![usize::MAX; n], succ: vec![usize::MAX; n], pred: vec![usize::MAX; n] };
        for (c, cyc) in f.cycles.iter().enumerate() {
            for (p, &v) in cyc.iter().enumerate() {
                let w = cyc[(p + 1) % cyc.len()];
                idx.cycle_of[v] = c;
                idx.succ[v] = w;
                idx.pred[w] = v;
            }
        }
        idx
    }

    fn on_f(&self, v: usize) -> bool {
        self.cycle_of[v] != usize::MAX
    }
}

impl ShiftedWalk {
    /// Vertices in walking order, without repeating the first at the end.
    pub fn vertices(&self, f: &CycleSet) -> Vec<usize> {
        let mut out = Vec::new();
        for s in &self.segments {
            let cyc = &f.cycles[s.cycle];
            let p = cyc.iter().position(|&v| v == s.exit).expect("exit lies on its cycle");
            out.extend((1..=cyc.len()).map(|i| cyc[(p + i) % cyc.len()]));
        }
        out
    }

    /// `(c_i, c_{i+1}⁺)` for every segment, cyclically.
    pub fn connecting_edges(&self, f: &CycleSet) -> Vec<(usize, usize)> {
        let entry = |s: &WalkSegment| {
            let cyc = &f.cycles[s.cycle];
            let p = cyc.iter().position(|&v| v == s.exit).expect("exit lies on its cycle");
            cyc[(p + 1) % cyc.len()]
        };
        let k = self.segments.len();
        (0..k).map(|i| (self.segments[i].exit, entry(&self.segments[(i + 1) % k]))).collect()
    }
}

fn check_cycles(r: &Digraph, f: &CycleSet) -> Result<(), ReducedError> {
    if f.is_empty() {
        return Err(ReducedError::InvalidParameter("F has no cycles".into()));
    }
    CycleSet::new(r.n(), f.cycles.clone(), 1).map(|_| ()).map_err(|e| ReducedError::InvalidParameter(e.to_string()))
}

/// Closed shifted walk in `r` with respect to `f`.
///
/// For each cycle `C_i` with first vertex `a_i`, the walk goes around `C_i`
/// to `a_i`, jumps to an out-neighbour `u` of `a_i` on `F`, goes around the
/// cycle of `u` to its predecessor `u⁻`, takes an edge `u⁻ → v⁺` where `v⁺`
/// succeeds an in-neighbour `v` of `a_{i+1}⁺`, goes around to `v` and enters
/// `C_{i+1}` at `a_{i+1}⁺`. Candidates are scanned in ascending order. A
/// single cycle is traversed once.
pub fn shifted_walk(r: &Digraph, f: &CycleSet, traversal_bound: usize) -> Result<ShiftedWalk, ReducedError> {
    check_cycles(r, f)?;
    let t = f.len();
    let idx = CycleIndex::new(r.n(), f);
    let a: Vec<usize> = f.cycles.iter().map(|c| c[0]).collect();
    let mut segments = Vec::with_capacity(3 * t);
    if t == 1 {
        segments.push(WalkSegment { cycle: 0, exit: a[0] });
    } else {
        for i in 0..t {
            let next = (i + 1) % t;
            let mut u_minus: Vec<usize> = r.out_neighbors(a[i]).filter(|&u| idx.on_f(u)).map(|u| idx.pred[u]).collect();
            let mut v_plus: Vec<usize> =
                r.in_neighbors(idx.succ[a[next]]).filter(|&v| idx.on_f(v)).map(|v| idx.succ[v]).collect();
            u_minus.sort_unstable();
            v_plus.sort_unstable();
            let hit = u_minus.iter().find_map(|&x| v_plus.iter().find(|&&y| r.has_edge(x, y)).map(|&y| (x, y)));
            let Some((um, vp)) = hit else {
                return Err(ReducedError::ConnectingEdgeNotFound { cycle: i, from: u_minus, to: v_plus });
            };
            segments.push(WalkSegment { cycle: i, exit: a[i] });
            segments.push(WalkSegment { cycle: idx.cycle_of[um], exit: um });
            segments.push(WalkSegment { cycle: idx.cycle_of[vp], exit: idx.pred[vp] });
        }
    }
    let mut traversals = vec![0; t];
    segments.iter().for_each(|s| traversals[s.cycle] += 1);
    if let Some((cycle, &k)) = traversals.iter().enumerate().find(|&(_, &k)| k > traversal_bound) {
        return Err(ReducedError::TraversalBoundExceeded { cycle, traversals: k, bound: traversal_bound });
    }
    Ok(ShiftedWalk { segments, traversals })
}

/// Checks that every connecting edge lies in `r` or `f` and that every vertex
/// of a cycle is visited exactly as often as its cycle is traversed.
pub fn audit_shifted_walk(r: &Digraph, f: &CycleSet, w: &ShiftedWalk) -> Result<(), String> {
    let idx = CycleIndex::new(r.n(), f);
    if w.segments.is_empty() {
        return Err("empty walk".into());
    }
    for s in &w.segments {
        if s.cycle >= f.len() || idx.cycle_of.get(s.exit) != Some(&s.cycle) {
            return Err(format!("segment {s:?} does not exit its own cycle"));
        }
    }
    for (x, y) in w.connecting_edges(f) {
        if !r.has_edge(x, y) && idx.succ[x] != y {
            return Err(format!("connecting edge {x}->{y} is in neither R nor F"));
        }
    }
    let mut visits = vec![0usize; r.n()];
    w.vertices(f).into_iter().for_each(|v| visits[v] += 1);
    for (c, cyc) in f.cycles.iter().enumerate() {
        let k = w.traversals.get(c).copied().unwrap_or(0);
        if k == 0 {
            return Err(format!("cycle {c} is never traversed"));
        }
        if let Some(&v) = cyc.iter().find(|&&v| visits[v] != k) {
            return Err(format!("vertex {v} of cycle {c} visited {} times, cycle traversed {k} times", visits[v]));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng as _;

    #[test]
    fn single_cycle_is_traversed_once() {
        let r = Digraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let f = CycleSet::new(4, vec![vec![0, 1, 2, 3]], 2).unwrap();
        let w = shifted_walk(&r, &f, 1).unwrap();
        assert_eq!(w.traversals, vec![1]);
        assert_eq!(w.vertices(&f), vec![1, 2, 3, 0]);
        audit_shifted_walk(&r, &f, &w).unwrap();
    }

    #[test]
    fn two_triangles_in_dense_host() {
        let l = 30;
        let mut rng = rng_from_seed(8);
        let mut r = Digraph::empty(l);
        for u in 0..l {
            for v in 0..l {
                if u != v && rng.gen_bool(0.6) {
                    r.add_edge(u, v).unwrap();
                }
            }
        }
        let f = CycleSet::new(l, vec![vec![0, 1, 2], vec![3, 4, 5]], 2).unwrap();
        for c in &f.cycles {
            for p in 0..3 {
                r.add_edge(c[p], c[(p + 1) % 3]).unwrap();
            }
        }
        let w = shifted_walk(&r, &f, 3 * l).unwrap();
        audit_shifted_walk(&r, &f, &w).unwrap();
        assert!(w.traversals.iter().all(|&k| k <= 3 * l));
    }

    #[test]
    fn disconnected_neighbourhoods() {
        let r = Digraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let f = CycleSet::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]], 2).unwrap();
        assert!(matches!(shifted_walk(&r, &f, 100), Err(ReducedError::ConnectingEdgeNotFound { cycle: 0, .. })));
    }
}
