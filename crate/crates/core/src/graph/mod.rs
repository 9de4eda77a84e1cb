//! Directed graphs, oriented graphs and tournaments, their generators and text format.

mod cycles;
mod digraph;
pub mod generate;
pub mod io;
mod oriented;

use thiserror::Error;

pub use cycles::{CycleSet, OneFactor};
pub use digraph::{Digraph, SemidegreeProfile};
pub use oriented::{OrientedGraph, RegularTournament, Tournament};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("edge {u}->{v} duplicates an existing edge or its reverse")]
    DuplicateOrAntiparallelEdge { u: usize, v: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("order {n} is even; a regular tournament needs odd order")]
    EvenOrder { n: usize },
    #[error("order {n} is below the minimum {min}")]
    InvalidOrder { n: usize, min: usize },
    #[error("connection set element {element} is repeated or outside 1..=(n-1)/2 for n = {n}")]
    InvalidConnectionSet { n: usize, element: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("semidegree window [{lo}, {hi}] unreachable for n = {n} after {toggles} toggles")]
    InfeasibleDegreeWindow { n: usize, lo: usize, hi: usize, toggles: usize },
    #[error("not a tournament: {edges} edges on {n} vertices")]
    NotATournament { n: usize, edges: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("cycle of length {len} is shorter than {min}")]
    ShortCycle { len: usize, min: usize },
    #[error("vertex {vertex} lies on two cycles")]
    CyclesNotDisjoint { vertex: usize },
    #[error("successor map hits vertex {vertex} twice")]
    NotAPermutation { vertex: usize },
    #[error("edge {u}->{v} is not in the host graph")]
    MissingEdge { u: usize, v: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
