use std::ops::Deref;

use serde::{Deserialize, Serialize};

use super::{Digraph, GraphError};

/// A digraph with at most one edge between every pair of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrientedGraph(Digraph);

impl OrientedGraph {
    pub fn empty(n: usize) -> Self {
        OrientedGraph(Digraph::empty(n))
    }

    /// Validates and builds an oriented graph. A repeated pair, in either
    /// direction, is rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = OrientedGraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn from_digraph(g: Digraph) -> Result<Self, GraphError> {
        for (u, v) in g.edges() {
            if g.has_edge(v, u) {
                return Err(GraphError::DuplicateOrAntiparallelEdge { u, v });
            }
        }
        Ok(OrientedGraph(g))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u < self.0.n() && v < self.0.n() && u != v && (self.0.has_edge(u, v) || self.0.has_edge(v, u)) {
            return Err(GraphError::DuplicateOrAntiparallelEdge { u, v });
        }
        self.0.add_edge(u, v).map(|_| ())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        self.0.remove_edge(u, v)
    }

    /// Replaces `u → v` by `v → u`. Returns false if `u → v` was absent.
    pub fn reverse_edge(&mut self, u: usize, v: usize) -> bool {
        if self.0.remove_edge(u, v) {
            self.0.insert_unchecked(v, u);
            true
        } else {
            false
        }
    }

    pub fn as_digraph(&self) -> &Digraph {
        &self.0
    }

    pub fn into_digraph(self) -> Digraph {
        self.0
    }

    pub fn is_tournament(&self) -> bool {
        let n = self.0.n();
        self.0.edge_count() == n * n.saturating_sub(1) / 2
    }
}

impl Deref for OrientedGraph {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.0
    }
}

/// An orientation of a complete graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tournament(OrientedGraph);

impl Tournament {
    pub fn as_oriented(&self) -> &OrientedGraph {
        &self.0
    }

    pub fn into_oriented(self) -> OrientedGraph {
        self.0
    }

    pub fn is_regular(&self) -> bool {
        self.0.n() % 2 == 1 && self.0.semidegrees().is_regular()
    }
}

impl TryFrom<OrientedGraph> for Tournament {
    type Error = GraphError;

    fn try_from(g: OrientedGraph) -> Result<Self, GraphError> {
        if g.is_tournament() {
            Ok(Tournament(g))
        } else {
            Err(GraphError::NotATournament { n: g.n(), edges: g.edge_count() })
        }
    }
}

impl Deref for Tournament {
    type Target = OrientedGraph;

    fn deref(&self) -> &OrientedGraph {
        &self.0
    }
}

/// A tournament of odd order in which every vertex has in- and outdegree `(n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegularTournament(Tournament);

impl RegularTournament {
    pub fn degree(&self) -> usize {
        (self.n() - 1) / 2
    }

    pub fn as_tournament(&self) -> &Tournament {
        &self.0
    }

    pub fn into_oriented(self) -> OrientedGraph {
        self.0.into_oriented()
    }

    /// Crate-internal: caller guarantees regularity.
    pub(crate) fn new_unchecked(g: OrientedGraph) -> Self {
        debug_assert!(g.is_tournament() && g.semidegrees().is_regular());
        RegularTournament(Tournament(g))
    }
}

impl TryFrom<OrientedGraph> for RegularTournament {
    type Error = GraphError;

    fn try_from(g: OrientedGraph) -> Result<Self, GraphError> {
        let t = Tournament::try_from(g)?;
        if t.is_regular() {
            Ok(RegularTournament(t))
        } else {
            Err(GraphError::NotRegular)
        }
    }
}

impl TryFrom<Tournament> for RegularTournament {
    type Error = GraphError;

    fn try_from(t: Tournament) -> Result<Self, GraphError> {
        if t.is_regular() {
            Ok(RegularTournament(t))
        } else {
            Err(GraphError::NotRegular)
        }
    }
}

impl Deref for RegularTournament {
    type Target = OrientedGraph;

    fn deref(&self) -> &OrientedGraph {
        &self.0 .0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_triangle_is_smallest_regular_tournament() {
        let g = OrientedGraph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let p = g.semidegrees();
        assert_eq!(p.out, vec![1, 1, 1]);
        assert_eq!(p.inn, vec![1, 1, 1]);
        let t = RegularTournament::try_from(g).unwrap();
        assert_eq!(t.degree(), 1);
    }

    #[test]
    fn antiparallel_pair_rejected() {
        let err = OrientedGraph::build(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateOrAntiparallelEdge { u: 1, v: 0 });
        let err = OrientedGraph::build(2, &[(0, 1), (0, 1)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateOrAntiparallelEdge { u: 0, v: 1 });
    }

    #[test]
    fn self_loop_and_range_errors() {
        assert_eq!(OrientedGraph::build(2, &[(1, 1)]).unwrap_err(), GraphError::SelfLoop { vertex: 1 });
        assert_eq!(
            OrientedGraph::build(2, &[(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 2, n: 2 }
        );
    }

    #[test]
    fn circulant_pairs_give_regular_tournament() {
        let edges: Vec<_> = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, (i + 2) % 5)]).collect();
        let g = OrientedGraph::build(5, &edges).unwrap();
        let t = RegularTournament::try_from(g).unwrap();
        assert_eq!(t.semidegrees().min, 2);
    }

    #[test]
    fn empty_graph_profile() {
        let g = OrientedGraph::empty(4);
        let p = g.semidegrees();
        assert_eq!(p.out, vec![0; 4]);
        assert_eq!((p.min, p.max), (0, 0));
    }

    #[test]
    fn non_tournament_and_irregular_rejected() {
        let path = OrientedGraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(Tournament::try_from(path).is_err());
        let transitive = OrientedGraph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let t = Tournament::try_from(transitive).unwrap();
        assert_eq!(RegularTournament::try_from(t).unwrap_err(), GraphError::NotRegular);
    }
}
