//! Integral max-flow and degree-prescribed subgraphs of bipartite pairs.

mod dinic;
mod prescribe;

use thiserror::Error;

pub use dinic::{max_flow, FlowNetwork, MaxFlow};
pub use prescribe::{
    deficit_cap, prescribed_subgraph, tau_regular_union, BlowupPair, CutWitness, DegreePrescription, Prescribed,
};

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("prescription unbalanced: sum x = {left}, sum y = {right}")]
    PrescriptionUnbalanced { left: usize, right: usize },
    #[error("deficit at position {index} exceeds {cap}")]
    PrescriptionOutOfRange { index: usize, cap: usize },
    #[error("prescription lengths ({x}, {y}) do not match pair classes ({left}, {right})")]
    SizeMismatch { left: usize, right: usize, x: usize, y: usize },
    #[error("pair {pair} is infeasible: cut {witness:?}")]
    PairInfeasible { pair: usize, witness: CutWitness },
    #[error("pair {pair} sends a different number of red edges than it receives")]
    UnbalancedRedEdges { pair: usize },
    #[error("vertex {vertex} has red degrees ({red_out}, {red_in}) but deficits ({x}, {y})")]
    RedDegreeMismatch { vertex: usize, red_out: usize, red_in: usize, x: usize, y: usize },
    #[error("vertex {vertex} has red degree {degree} above cap {cap}")]
    RedDegreeExceedsCap { vertex: usize, degree: usize, cap: usize },
    #[error("edge {u}->{v} would appear twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} has semidegrees ({out}, {inn}), expected {tau}")]
    NotRegularUnion { vertex: usize, out: usize, inn: usize, tau: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
