use crate::bipartite::BipartiteGraph;

/// A matching stored from both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left.iter().filter(|m| m.is_some()).count()
    }

    /// Left-to-right assignment when every vertex on both sides is matched.
    pub fn as_perfect(&self) -> Option<Vec<usize>> {
        if self.left.len() != self.right.len() {
            return None;
        }
        self.left.iter().copied().collect()
    }
}

const INF: usize = usize::MAX;

struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    mate_l: Vec<Option<usize>>,
    mate_r: Vec<Option<usize>>,
    dist: Vec<usize>,
    next_arc: Vec<usize>,
}

impl HopcroftKarp<'_> {
    fn bfs(&mut self) -> bool {
        let mut queue = std::collections::VecDeque::new();
        for (x, m) in self.mate_l.iter().enumerate() {
            if m.is_none() {
                self.dist[x] = 0;
                queue.push_back(x);
            } else {
                self.dist[x] = INF;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                match self.mate_r[y] {
                    None => found = true,
                    Some(x2) if self.dist[x2] == INF => {
                        self.dist[x2] = self.dist[x] + 1;
                        queue.push_back(x2);
                    }
                    Some(_) => {}
                }
            }
        }
        found
    }

    fn dfs(&mut self, x: usize) -> bool {
        while self.next_arc[x] < self.adj[x].len() {
            let y = self.adj[x][self.next_arc[x]];
            self.next_arc[x] += 1;
            let advance = match self.mate_r[y] {
                None => true,
                Some(x2) => self.dist[x2] == self.dist[x] + 1 && self.dfs(x2),
            };
            if advance {
                self.mate_l[x] = Some(y);
                self.mate_r[y] = Some(x);
                return true;
            }
        }
        self.dist[x] = INF;
        false
    }
}

/// Maximum matching by Hopcroft–Karp phases over sorted neighbour lists.
///
/// Free left vertices are tried in ascending order and each scans its
/// neighbours in ascending order, so the output is a deterministic function
/// of the lists.
pub fn maximum_matching_lists(right_size: usize, adj: &[Vec<usize>]) -> Matching {
    let left = adj.len();
    let mut hk = HopcroftKarp {
        adj,
        mate_l: vec![None; left],
        mate_r: vec![None; right_size],
        dist: vec![INF; left],
        next_arc: vec![0; left],
    };
    while hk.bfs() {
        hk.next_arc.iter_mut().for_each(|a| *a = 0);
        for x in 0..left {
            if hk.mate_l[x].is_none() {
                hk.dfs(x);
            }
        }
    }
    Matching { left: hk.mate_l, right: hk.mate_r }
}

pub fn maximum_matching(b: &BipartiteGraph) -> Matching {
    maximum_matching_lists(b.right_size(), &b.adjacency_lists())
}

/// A perfect matching as a left-to-right map, or `None` if there is none.
pub fn perfect_matching(b: &BipartiteGraph) -> Option<Vec<usize>> {
    if b.left_size() != b.right_size() {
        return None;
    }
    maximum_matching(b).as_perfect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_four_by_four() {
        let m = perfect_matching(&BipartiteGraph::complete(4, 4)).unwrap();
        let mut seen = m.clone();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3]);
    }

    #[test]
    fn one_regular_has_its_unique_matching() {
        let b = BipartiteGraph::from_edges(3, 3, &[(0, 2), (1, 0), (2, 1)]);
        assert_eq!(perfect_matching(&b), Some(vec![2, 0, 1]));
    }

    #[test]
    fn star_violates_hall() {
        let b = BipartiteGraph::from_edges(3, 3, &[(0, 0), (0, 1), (0, 2)]);
        assert_eq!(perfect_matching(&b), None);
        assert_eq!(maximum_matching(&b).size(), 1);
    }

    #[test]
    fn needs_augmentation_through_matched_vertices() {
        // Greedy would match 0-0 and strand 1.
        let b = BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(perfect_matching(&b), Some(vec![1, 0]));
    }
}
