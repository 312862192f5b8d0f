use std::time::Duration;

use crate::graph::NodeId;
use crate::solution::SolutionSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("self-loop on node {0} rejected")]
    SelfLoop(NodeId),

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },

    #[error("node-score ordering requested without a score table")]
    MissingScores,

    #[error("score table has {got} entries, graph has {expected} nodes")]
    ScoreTableLength { expected: usize, got: usize },

    #[error(
        "materializing {tau} cliques needs ~{estimated_bytes} bytes, over the {cap_bytes}-byte cap"
    )]
    MemoryGuard {
        tau: u64,
        estimated_bytes: u64,
        cap_bytes: u64,
    },

    #[error("clique graph has at least {tau} cliques, over the cap of {cap}")]
    Capacity { tau: u64, cap: u64 },

    #[error("exact search exceeded {budget:?}; best set found has {} cliques", incumbent.len())]
    Timeout {
        budget: Duration,
        incumbent: Box<SolutionSet>,
    },

    #[error("score bound violated by clique {clique:?}: score {score}, degree {degree}")]
    ScoreBound {
        clique: Vec<NodeId>,
        score: u64,
        degree: usize,
    },

    #[error("solution is not maximal: free nodes {0:?} form a clique")]
    NotMaximal(Vec<NodeId>),

    #[error("invalid solution: {0}")]
    InvalidSolution(String),

    #[error("verification failed after update {op}: {message}")]
    Verification { op: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
