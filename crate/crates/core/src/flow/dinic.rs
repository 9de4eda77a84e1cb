use std::collections::VecDeque;

use super::FlowError;
use crate::scalar::Capacity;

/// A directed network with integer capacities, a source and a sink.
///
/// Arcs are stored in residual pairs: arc `k` of the caller lives at index
/// `2k` with its reverse at `2k + 1`.
#[derive(Clone, Debug)]
pub struct FlowNetwork<C> {
    source: usize,
    sink: usize,
    to: Vec<usize>,
    residual: Vec<C>,
    out: Vec<Vec<usize>>,
}

/// Result of [`max_flow`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxFlow<C> {
    pub value: C,
    /// Flow on each arc, indexed as returned by [`FlowNetwork::add_arc`].
    pub arc_flows: Vec<C>,
    /// Nodes reachable from the source in the final residual network; the
    /// arcs leaving this set form a minimum cut.
    pub source_side: Vec<bool>,
}

impl<C: Capacity> FlowNetwork<C> {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self, FlowError> {
        if source >= nodes || sink >= nodes || source == sink {
            return Err(FlowError::InvalidNetwork(format!("source {source} / sink {sink} invalid for {nodes} nodes")));
        }
        Ok(FlowNetwork { source, sink, to: Vec::new(), residual: Vec::new(), out: vec![Vec::new(); nodes] })
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.to.len() / 2
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Adds `u → v` with capacity `cap` and returns its index.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: C) -> Result<usize, FlowError> {
        let n = self.node_count();
        if u >= n || v >= n || u == v {
            return Err(FlowError::InvalidNetwork(format!("arc {u}->{v} invalid for {n} nodes")));
        }
        if v == self.source || u == self.sink {
            return Err(FlowError::InvalidNetwork(format!("arc {u}->{v} enters the source or leaves the sink")));
        }
        if cap < C::zero() {
            return Err(FlowError::InvalidNetwork(format!("arc {u}->{v} has negative capacity")));
        }
        let id = self.arc_count();
        self.out[u].push(self.to.len());
        self.to.push(v);
        self.residual.push(cap);
        self.out[v].push(self.to.len());
        self.to.push(u);
        self.residual.push(C::zero());
        Ok(id)
    }

    /// `(tail, head, capacity)` of arc `id`.
    pub fn arc(&self, id: usize) -> (usize, usize, C) {
        let k = 2 * id;
        (self.to[k + 1], self.to[k], self.residual[k] + self.residual[k + 1])
    }
}

struct Dinic<C> {
    net: FlowNetwork<C>,
    level: Vec<usize>,
    next_arc: Vec<usize>,
}

impl<C: Capacity> Dinic<C> {
    fn bfs(&mut self) -> bool {
        self.level.iter_mut().for_each(|l| *l = usize::MAX);
        self.level[self.net.source] = 0;
        let mut queue = VecDeque::from([self.net.source]);
        while let Some(u) = queue.pop_front() {
            for &k in &self.net.out[u] {
                let v = self.net.to[k];
                if self.level[v] == usize::MAX && self.net.residual[k] > C::zero() {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[self.net.sink] != usize::MAX
    }

    fn dfs(&mut self, u: usize, limit: C) -> C {
        if u == self.net.sink {
            return limit;
        }
        while self.next_arc[u] < self.net.out[u].len() {
            let k = self.net.out[u][self.next_arc[u]];
            let v = self.net.to[k];
            let res = self.net.residual[k];
            if res > C::zero() && self.level[v] == self.level[u] + 1 {
                let pushed = self.dfs(v, limit.min(res));
                if pushed > C::zero() {
                    self.net.residual[k] = self.net.residual[k] - pushed;
                    self.net.residual[k ^ 1] = self.net.residual[k ^ 1] + pushed;
                    return pushed;
                }
            }
            self.next_arc[u] += 1;
        }
        C::zero()
    }
}

/// Maximum integral flow by Dinic's layered blocking flows. Arcs are tried
/// in insertion order, so the result is deterministic.
pub fn max_flow<C: Capacity>(net: &FlowNetwork<C>) -> MaxFlow<C> {
    let n = net.node_count();
    let mut d = Dinic { net: net.clone(), level: vec![usize::MAX; n], next_arc: vec![0; n] };
    let infinite: C = net.out[net.source].iter().fold(C::zero(), |acc, &k| acc.saturating_add(net.residual[k]));
    let mut value = C::zero();
    while d.bfs() {
        d.next_arc.iter_mut().for_each(|a| *a = 0);
        loop {
            let pushed = d.dfs(net.source, infinite);
            if pushed == C::zero() {
                break;
            }
            value = value + pushed;
        }
    }
    let source_side = d.level.iter().map(|&l| l != usize::MAX).collect();
    let arc_flows = (0..net.arc_count()).map(|id| d.net.residual[2 * id + 1]).collect();
    MaxFlow { value, arc_flows, source_side }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc() {
        let mut net = FlowNetwork::<i64>::new(2, 0, 1).unwrap();
        net.add_arc(0, 1, 7).unwrap();
        let f = max_flow(&net);
        assert_eq!(f.value, 7);
        assert_eq!(f.arc_flows, vec![7]);
        assert_eq!(f.source_side, vec![true, false]);
    }

    #[test]
    fn two_disjoint_paths() {
        let mut net = FlowNetwork::<u32>::new(4, 0, 3).unwrap();
        net.add_arc(0, 1, 3).unwrap();
        net.add_arc(1, 3, 3).unwrap();
        net.add_arc(0, 2, 4).unwrap();
        net.add_arc(2, 3, 9).unwrap();
        assert_eq!(max_flow(&net).value, 7);
    }

    #[test]
    fn needs_reverse_residual_arc() {
        // The first augmenting path 0-1-2-3 must be partly undone.
        let mut net = FlowNetwork::<i32>::new(4, 0, 3).unwrap();
        for (u, v) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
            net.add_arc(u, v, 1).unwrap();
        }
        assert_eq!(max_flow(&net).value, 2);
    }

    #[test]
    fn rejects_arcs_into_source_or_out_of_sink() {
        let mut net = FlowNetwork::<i64>::new(3, 0, 2).unwrap();
        assert!(net.add_arc(1, 0, 1).is_err());
        assert!(net.add_arc(2, 1, 1).is_err());
        assert!(net.add_arc(1, 1, 1).is_err());
        assert!(net.add_arc(0, 1, -1).is_err());
        assert!(FlowNetwork::<i64>::new(3, 1, 1).is_err());
    }
}
