use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node {node} rejected")]
    SelfLoop { line: usize, node: u64 },

    #[error("line {line}: non-positive weight {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },

    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: usize, v: usize, reason: String },

    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("information centrality is undefined for a single-node graph")]
    SingleNode,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge ({head}, {tail}) is not incident to node {target}")]
    NotIncident {
        head: usize,
        tail: usize,
        target: usize,
    },

    #[error("dense mode refuses n = {n} > {limit}; use the approximate path")]
    DenseTooLarge { n: usize, limit: usize },

    #[error("exhaustive search over {subsets} subsets exceeds the limit of {limit}")]
    CombinatorialGuard { subsets: u128, limit: u128 },

    #[error("solver stopped after {iterations} iterations at residual {achieved:e} (target {target:e})")]
    SolverNotConverged {
        iterations: usize,
        achieved: f64,
        target: f64,
    },

    #[error("factorization broke down at pivot {0}")]
    FactorizationFailed(usize),

    #[error("no connected graph after {attempts} attempts")]
    GeneratorFailed { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
