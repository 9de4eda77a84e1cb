//! Hamilton cycle machinery for regular tournaments and dense oriented graphs.

pub mod bipartite;
pub mod bitset;
pub mod decompose;
pub mod factor;
pub mod flow;
pub mod reduced;
pub mod graph;
pub mod oracle;
pub mod rng;
pub mod rotation;
pub mod scalar;

pub use graph::{CycleSet, Digraph, GraphError, OneFactor, OrientedGraph, RegularTournament, SemidegreeProfile, Tournament};

/// Arc capacity used by the flow-based extraction.
pub type Cap = i64;
/// Exact perfect-matching counts.
pub type Count = i128;
/// Densities, tolerances and log-space bounds.
pub type Real = f64;
pub type Network = flow::FlowNetwork<Cap>;
pub type Flow = flow::MaxFlow<Cap>;
