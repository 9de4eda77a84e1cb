use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::close::{close_path_unstructured, RotationCase};
use super::{MergeError, ReserveGraph};
use crate::graph::OneFactor;

/// Counters of one merge run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeStats {
    /// Rotation-extension steps, one per merged group of cycles.
    pub steps: usize,
    pub extensions: usize,
    pub direct_closures: usize,
    pub rotations: usize,
    /// Reserve edges moved into the factor.
    pub green_used: usize,
    /// Factor edges moved into the reserve.
    pub white_credited: usize,
}

/// Factor and reserve under the exchange discipline: a reserve edge that
/// enters the factor leaves the reserve and a factor edge that is dropped
/// joins it.
struct Engine {
    succ: Vec<usize>,
    reserve: ReserveGraph,
    red_out: Vec<bool>,
    red_in: Vec<bool>,
    stats: MergeStats,
}

impl Engine {
    fn new(f: &OneFactor, reserve: ReserveGraph, red_edges: &[(usize, usize)]) -> Self {
        let n = f.n();
        let mut red_out = vec![false; n];
        let mut red_in = vec![false; n];
        for &(u, v) in red_edges {
            red_out[u] = true;
            red_in[v] = true;
        }
        Engine { succ: f.successors().to_vec(), reserve, red_out, red_in, stats: MergeStats::default() }
    }

    /// A reserve edge whose tail does not start and whose head does not end a red edge.
    fn green(&self, u: usize, v: usize) -> bool {
        !self.red_out[u] && !self.red_in[v] && self.reserve.has_edge(u, v)
    }

    fn cycle_ids(&self) -> (Vec<usize>, usize) {
        let n = self.succ.len();
        let mut id = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if id[s] != usize::MAX {
                continue;
            }
            let mut x = s;
            while id[x] == usize::MAX {
                id[x] = count;
                x = self.succ[x];
            }
            count += 1;
        }
        (id, count)
    }

    /// The factor cycle through `v`, starting at `v`.
    fn cycle_from(&self, v: usize) -> Vec<usize> {
        let mut c = vec![v];
        let mut x = self.succ[v];
        while x != v {
            c.push(x);
            x = self.succ[x];
        }
        c
    }

    /// Joins the cycles through `p` and `q` by the green edge `p → q`. The
    /// path is extended through green edges into further cycles while
    /// possible, then closed by rotation. Nothing changes on failure.
    fn merge_from(&mut self, p: usize, q: usize) -> Result<(), MergeError> {
        let n = self.succ.len();
        let mut in_path = vec![false; n];
        let mut path: VecDeque<usize> = VecDeque::new();
        let mut start = self.cycle_from(self.succ[p]);
        start.extend(self.cycle_from(q));
        for &v in &start {
            in_path[v] = true;
        }
        path.extend(start);

        loop {
            let b = *path.back().expect("non-empty path");
            let forward = self.reserve.out_neighbors(b).find(|&v| !in_path[v] && self.green(b, v));
            if let Some(v) = forward {
                for x in self.cycle_from(v) {
                    in_path[x] = true;
                    path.push_back(x);
                }
                self.stats.extensions += 1;
                continue;
            }
            let a = *path.front().expect("non-empty path");
            let backward = self.reserve.in_neighbors(a).find(|&w| !in_path[w] && self.green(w, a));
            if let Some(w) = backward {
                for x in self.cycle_from(self.succ[w]).into_iter().rev() {
                    in_path[x] = true;
                    path.push_front(x);
                }
                self.stats.extensions += 1;
                continue;
            }
            break;
        }

        let path: Vec<usize> = path.into();
        let green = |u: usize, v: usize| self.green(u, v);
        let (cycle, case) = close_path_unstructured(&path, &green).map_err(|f| MergeError::RotationFailed {
            path_len: path.len(),
            from: f.from.iter().map(|&i| path[i]).collect(),
            to: f.to.iter().map(|&i| path[i]).collect(),
        })?;
        match case {
            RotationCase::Direct => self.stats.direct_closures += 1,
            _ => self.stats.rotations += 1,
        }
        self.commit(&cycle)?;
        self.stats.steps += 1;
        Ok(())
    }

    fn commit(&mut self, cycle: &[usize]) -> Result<(), MergeError> {
        let len = cycle.len();
        for i in 0..len {
            let (u, v) = (cycle[i], cycle[(i + 1) % len]);
            let old = self.succ[u];
            if old == v {
                continue;
            }
            if self.red_out[u] {
                return Err(MergeError::InvariantBreach(format!("red edge {u}->{old} would be dropped")));
            }
            if !self.reserve.remove(u, v) {
                return Err(MergeError::InvariantBreach(format!("new edge {u}->{v} is not in the reserve")));
            }
            self.reserve.insert(u, old);
            self.succ[u] = v;
            self.stats.green_used += 1;
            self.stats.white_credited += 1;
        }
        Ok(())
    }

    fn new_edges_since(&self, original: &OneFactor) -> usize {
        self.succ.iter().enumerate().filter(|&(x, &y)| original.succ(x) != y).count()
    }

    fn factor(&self) -> OneFactor {
        OneFactor::from_successors(self.succ.clone()).expect("exchanges keep a permutation")
    }
}

/// Options of [`merge_cycles`] and [`merge_into_hamilton`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOptions {
    /// Minimum semidegree the reserve must keep after every exchange.
    pub floor: usize,
    /// New-edge budget; `None` means six per cycle of the input factor.
    pub budget: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeOutcome {
    pub factor: OneFactor,
    pub reserve: ReserveGraph,
    pub stats: MergeStats,
}

fn check_inputs(f: &OneFactor, reserve: &ReserveGraph, red_edges: &[(usize, usize)], floor: usize) -> Result<(), MergeError> {
    if reserve.n() != f.n() {
        return Err(MergeError::InvalidInput(format!("reserve has {} vertices, factor {}", reserve.n(), f.n())));
    }
    if let Some((x, y)) = f.edges().find(|&(x, y)| reserve.has_edge(x, y)) {
        return Err(MergeError::InvalidInput(format!("factor edge {x}->{y} is also a reserve edge")));
    }
    if let Some(&(u, v)) = red_edges.iter().find(|&&(u, v)| u >= f.n() || f.succ(u) != v) {
        return Err(MergeError::InvalidInput(format!("red edge {u}->{v} is not a factor edge")));
    }
    check_floor(reserve, floor)
}

fn check_floor(reserve: &ReserveGraph, floor: usize) -> Result<(), MergeError> {
    for v in 0..reserve.n() {
        let d = reserve.out_degree(v).min(reserve.in_degree(v));
        if d < floor {
            return Err(MergeError::ReserveDepleted { vertex: v, degree: d, floor });
        }
    }
    Ok(())
}

/// Merges cycles of `f` until, for every cluster, all its vertices that send
/// a white (non-red) edge in `f` lie on one cycle.
///
/// Each step picks a cluster whose white senders lie on two cycles `C ≠ C*`
/// and looks for a green edge joining the neighbourhood of `C` or `C*` to
/// another cycle. It then extends and rotates as in
/// [`merge_into_hamilton`]. Red edges of `f` are kept.
pub fn merge_cycles(
    f: &OneFactor,
    reserve: &ReserveGraph,
    cluster_of: &[usize],
    red_edges: &[(usize, usize)],
    opts: &MergeOptions,
) -> Result<MergeOutcome, MergeError> {
    check_inputs(f, reserve, red_edges, opts.floor)?;
    let n = f.n();
    if cluster_of.len() != n {
        return Err(MergeError::InvalidInput(format!("cluster map covers {} of {n} vertices", cluster_of.len())));
    }
    let budget = opts.budget.unwrap_or(6 * f.cycle_count());
    let mut e = Engine::new(f, reserve.clone(), red_edges);
    let clusters = cluster_of.iter().copied().max().map_or(0, |c| c + 1);
    let mut white_senders: Vec<Vec<usize>> = vec![Vec::new(); clusters];
    for x in 0..n {
        if !e.red_out[x] {
            white_senders[cluster_of[x]].push(x);
        }
    }

    loop {
        let (id, count) = e.cycle_ids();
        let violation = white_senders.iter().enumerate().find_map(|(c, xs)| {
            let first = *xs.first()?;
            xs.iter().find(|&&x| id[x] != id[first]).map(|&other| (c, first, other))
        });
        let Some((cluster, x, x_star)) = violation else {
            break;
        };
        let senders = &white_senders[cluster];
        let y_star = e.succ[x_star];
        let on_c = senders.iter().copied().filter(|&s| id[s] == id[x]);
        let case1 = on_c
            .flat_map(|s| e.reserve.out_neighbors(s).map(move |z| (s, z)))
            .find(|&(s, z)| e.green(s, z) && id[z] != id[s]);
        let case2 = || {
            senders
                .iter()
                .filter(|&&s| id[s] != id[x])
                .map(|&s| e.succ[s])
                .flat_map(|y| e.reserve.in_neighbors(y).map(move |w| (w, y)))
                .find(|&(w, y)| e.green(w, y) && id[w] != id[y])
        };
        let case3 = || {
            let ins: Vec<usize> = e.reserve.in_neighbors(y_star).filter(|&w| e.green(w, y_star)).collect();
            let outs: Vec<usize> = e.reserve.out_neighbors(x).filter(|&z| e.green(x, z)).collect();
            ins.iter().flat_map(|&a| outs.iter().map(move |&b| (a, b))).find(|&(a, b)| id[a] != id[b] && e.green(a, b))
        };
        let Some((p, q)) = case1.or_else(case2).or_else(case3) else {
            return Err(MergeError::Stuck { cluster, cycles: count });
        };
        e.merge_from(p, q)?;
        let (_, after) = e.cycle_ids();
        if after >= count {
            return Err(MergeError::InvariantBreach(format!("cycle count did not drop ({count} -> {after})")));
        }
        let used = e.new_edges_since(f);
        if used > budget {
            return Err(MergeError::BudgetExceeded { used, budget });
        }
        check_floor(&e.reserve, opts.floor)?;
    }

    let out = e.factor();
    let (id, _) = e.cycle_ids();
    if let Some((x, y)) = f.edges().find(|&(x, y)| id[x] != id[y]) {
        return Err(MergeError::InvariantBreach(format!("endpoints of {x}->{y} ended on different cycles")));
    }
    if let Some(&(u, v)) = red_edges.iter().find(|&&(u, v)| out.succ(u) != v) {
        return Err(MergeError::InvariantBreach(format!("red edge {u}->{v} was lost")));
    }
    Ok(MergeOutcome { factor: out, reserve: e.reserve, stats: e.stats })
}

/// Merges all cycles of `f` into one Hamilton cycle using the reserve.
///
/// While more than one cycle remains, the first green edge (lowest tail,
/// oldest reserve edge) between two cycles starts a path; the path is
/// extended through green edges into further cycles as long as possible and
/// then closed by rotation. On error the caller's factor and reserve are
/// untouched because the work happens on copies.
pub fn merge_into_hamilton(f: &OneFactor, reserve: &ReserveGraph, opts: &MergeOptions) -> Result<MergeOutcome, MergeError> {
    check_inputs(f, reserve, &[], opts.floor)?;
    let budget = opts.budget.unwrap_or(6 * f.cycle_count());
    let mut e = Engine::new(f, reserve.clone(), &[]);
    loop {
        let (id, count) = e.cycle_ids();
        if count <= 1 {
            break;
        }
        let start = (0..f.n()).find_map(|p| e.reserve.out_neighbors(p).find(|&q| id[q] != id[p]).map(|q| (p, q)));
        let Some((p, q)) = start else {
            return Err(MergeError::Stuck { cluster: 0, cycles: count });
        };
        e.merge_from(p, q)?;
        let (_, after) = e.cycle_ids();
        if after >= count {
            return Err(MergeError::InvariantBreach(format!("cycle count did not drop ({count} -> {after})")));
        }
        let used = e.new_edges_since(f);
        if used > budget {
            return Err(MergeError::BudgetExceeded { used, budget });
        }
        check_floor(&e.reserve, opts.floor)?;
    }
    Ok(MergeOutcome { factor: e.factor(), reserve: e.reserve, stats: e.stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Digraph;

    /// Clusters of size `m` around a cycle of length `l`; vertex `c*m + i`.
    fn blown_up_cycle(l: usize, m: usize) -> (OneFactor, ReserveGraph, Vec<usize>, Vec<usize>) {
        let n = l * m;
        let succ: Vec<usize> = (0..n).map(|v| ((v / m + 1) % l) * m + v % m).collect();
        let f = OneFactor::from_successors(succ.clone()).unwrap();
        let mut r = ReserveGraph::empty(n);
        for u in 0..n {
            let next = (u / m + 1) % l;
            for j in 0..m {
                let v = next * m + j;
                if v != succ[u] {
                    r.insert(u, v);
                }
            }
        }
        let cluster_of = (0..n).map(|v| v / m).collect();
        let next = (0..l).map(|c| (c + 1) % l).collect();
        (f, r, cluster_of, next)
    }

    fn degrees(r: &ReserveGraph) -> Vec<(usize, usize)> {
        (0..r.n()).map(|v| (r.out_degree(v), r.in_degree(v))).collect()
    }

    #[test]
    fn hamilton_input_is_left_alone() {
        let f = OneFactor::from_successors(vec![1, 2, 3, 0]).unwrap();
        let r = ReserveGraph::from_digraph(&Digraph::from_edges(4, &[(0, 2), (2, 0)]).unwrap());
        let out = merge_into_hamilton(&f, &r, &MergeOptions { floor: 0, budget: None }).unwrap();
        assert_eq!(out.factor, f);
        assert_eq!(out.reserve, r);
        assert_eq!(out.stats, MergeStats::default());
    }

    #[test]
    fn two_triangles_merge() {
        let f = OneFactor::from_successors(vec![1, 2, 0, 4, 5, 3]).unwrap();
        let mut host = Digraph::empty(6);
        for u in 0..6 {
            for v in 0..6 {
                if u != v && f.succ(u) != v && f.succ(v) != u {
                    host.add_edge(u, v).unwrap();
                }
            }
        }
        let r = ReserveGraph::from_digraph(&host);
        let out = merge_into_hamilton(&f, &r, &MergeOptions { floor: 0, budget: None }).unwrap();
        assert!(out.factor.as_hamilton_cycle().is_some());
        assert_eq!(degrees(&out.reserve), degrees(&r));
        assert_eq!(out.reserve.edge_count(), r.edge_count());
        for (x, y) in out.factor.edges() {
            assert!(f.succ(x) == y || r.has_edge(x, y));
            assert!(!out.reserve.has_edge(x, y));
        }
        assert_eq!(out.stats.green_used, out.stats.white_credited);
    }

    #[test]
    fn clustered_merge_keeps_structure_and_degrees() {
        let (f, r, cluster_of, next) = blown_up_cycle(5, 6);
        assert_eq!(f.cycle_count(), 6);
        let out = merge_cycles(&f, &r, &cluster_of, &[], &MergeOptions { floor: 0, budget: None }).unwrap();
        assert_eq!(out.factor.cycle_count(), 1);
        assert_eq!(degrees(&out.reserve), degrees(&r));
        assert!(out.reserve.follows_clusters(&cluster_of, &next));
        let budget = 6 * f.cycle_count();
        assert!(out.factor.edges().filter(|&(x, y)| f.succ(x) != y).count() <= budget);
    }

    #[test]
    fn red_edges_survive_and_their_senders_are_exempt() {
        let (f, r, cluster_of, _) = blown_up_cycle(4, 5);
        let red = vec![(0, f.succ(0)), (7, f.succ(7))];
        let out = merge_cycles(&f, &r, &cluster_of, &red, &MergeOptions { floor: 0, budget: None }).unwrap();
        for &(u, v) in &red {
            assert_eq!(out.factor.succ(u), v);
        }
        let ids = out.factor.cycle_structure();
        let mut on = vec![usize::MAX; f.n()];
        for (c, cyc) in ids.cycles.iter().enumerate() {
            for &v in cyc {
                on[v] = c;
            }
        }
        for c in 0..4 {
            let senders: Vec<usize> = (c * 5..c * 5 + 5).filter(|&x| !red.iter().any(|&(u, _)| u == x)).collect();
            assert!(senders.iter().all(|&x| on[x] == on[senders[0]]));
        }
    }

    #[test]
    fn rejects_overlap_and_floor() {
        let (f, mut r, cluster_of, _) = blown_up_cycle(3, 3);
        let opts = MergeOptions { floor: 0, budget: None };
        r.insert(0, f.succ(0));
        assert!(matches!(merge_cycles(&f, &r, &cluster_of, &[], &opts), Err(MergeError::InvalidInput(_))));
        let (f, r, cluster_of, _) = blown_up_cycle(3, 3);
        let opts = MergeOptions { floor: 3, budget: None };
        assert!(matches!(merge_cycles(&f, &r, &cluster_of, &[], &opts), Err(MergeError::ReserveDepleted { .. })));
    }

    #[test]
    fn no_reserve_is_stuck() {
        let (f, _, cluster_of, _) = blown_up_cycle(3, 3);
        let r = ReserveGraph::empty(9);
        let opts = MergeOptions { floor: 0, budget: None };
        assert!(matches!(merge_cycles(&f, &r, &cluster_of, &[], &opts), Err(MergeError::Stuck { .. })));
        assert!(matches!(merge_into_hamilton(&f, &r, &opts), Err(MergeError::Stuck { .. })));
    }
}
