use serde::{Deserialize, Serialize};

use super::{Digraph, GraphError};

/// A collection of vertex-disjoint directed cycles, each listed in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSet {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleSet {
    /// Validates disjointness and minimum cycle length. `min_len` is 3 in
    /// oriented contexts and 2 in multidigraph contexts; a cluster-level
    /// caller that allows loops passes 1.
    pub fn new(n: usize, cycles: Vec<Vec<usize>>, min_len: usize) -> Result<Self, GraphError> {
        let mut seen = vec![false; n];
        for c in &cycles {
            if c.len() < min_len {
                return Err(GraphError::ShortCycle { len: c.len(), min: min_len });
            }
            for &v in c {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GraphError::CyclesNotDisjoint { vertex: v });
                }
            }
        }
        Ok(CycleSet { cycles })
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn covered(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.cycles.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn covered_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Directed edges of every cycle, closing edge included.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |i| (c[i], c[(i + 1) % c.len()])))
    }
}

/// A spanning collection of vertex-disjoint cycles, stored as a successor permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneFactor {
    successor: Vec<usize>,
}

impl OneFactor {
    /// Checks that `successor` is a permutation without fixed points.
    pub fn from_successors(successor: Vec<usize>) -> Result<Self, GraphError> {
        let n = successor.len();
        let mut hit = vec![false; n];
        for (x, &y) in successor.iter().enumerate() {
            if y >= n {
                return Err(GraphError::VertexOutOfRange { vertex: y, n });
            }
            if y == x {
                return Err(GraphError::SelfLoop { vertex: x });
            }
            if std::mem::replace(&mut hit[y], true) {
                return Err(GraphError::NotAPermutation { vertex: y });
            }
        }
        Ok(OneFactor { successor })
    }

    /// Checks the permutation and that every `x → succ(x)` is an edge of `host`.
    pub fn in_host(successor: Vec<usize>, host: &Digraph) -> Result<Self, GraphError> {
        let f = OneFactor::from_successors(successor)?;
        if f.n() != host.n() {
            return Err(GraphError::VertexOutOfRange { vertex: f.n(), n: host.n() });
        }
        for (x, y) in f.edges() {
            if !host.has_edge(x, y) {
                return Err(GraphError::MissingEdge { u: x, v: y });
            }
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.successor.len()
    }

    pub fn succ(&self, x: usize) -> usize {
        self.successor[x]
    }

    pub fn successors(&self) -> &[usize] {
        &self.successor
    }

    pub fn predecessors(&self) -> Vec<usize> {
        let mut pred = vec![0; self.n()];
        for (x, &y) in self.successor.iter().enumerate() {
            pred[y] = x;
        }
        pred
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.successor.iter().enumerate().map(|(x, &y)| (x, y))
    }

    /// Cycles of the permutation, each starting at its smallest vertex, ordered by that vertex.
    pub fn cycle_structure(&self) -> CycleSet {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.successor[x];
            }
            cycles.push(cycle);
        }
        CycleSet { cycles }
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.successor[x];
            }
        }
        count
    }

    /// For a single spanning cycle, its vertex sequence starting at 0.
    pub fn as_hamilton_cycle(&self) -> Option<Vec<usize>> {
        let cs = self.cycle_structure();
        (cs.len() == 1).then(|| cs.cycles.into_iter().next().unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle_has_one_cycle() {
        let f = OneFactor::from_successors(vec![1, 2, 3, 4, 0]).unwrap();
        let cs = f.cycle_structure();
        assert_eq!(cs.cycles, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(f.as_hamilton_cycle(), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn triangle_plus_four_cycle() {
        // 0→1→2→0 and 3→4→5→6→3
        let f = OneFactor::from_successors(vec![1, 2, 0, 4, 5, 6, 3]).unwrap();
        let cs = f.cycle_structure();
        let mut lens: Vec<_> = cs.cycles.iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, vec![3, 4]);
        assert_eq!(cs.covered_count(), 7);
        assert_eq!(f.cycle_count(), 2);
    }

    #[test]
    fn rejects_fixed_points_and_collisions() {
        assert!(matches!(OneFactor::from_successors(vec![0, 1]), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(
            OneFactor::from_successors(vec![1, 0, 0]),
            Err(GraphError::NotAPermutation { vertex: 0 })
        ));
    }

    #[test]
    fn cycle_set_validation() {
        assert!(CycleSet::new(4, vec![vec![0, 1], vec![2, 3]], 2).is_ok());
        assert!(matches!(CycleSet::new(4, vec![vec![0, 1]], 3), Err(GraphError::ShortCycle { .. })));
        assert!(matches!(
            CycleSet::new(4, vec![vec![0, 1, 2], vec![2, 3, 0]], 3),
            Err(GraphError::CyclesNotDisjoint { vertex: 2 })
        ));
    }
}
