//! Information centrality of a target node and greedy edge addition to
//! maximize it: exact rank-1 updates, randomized estimators, baselines and a
//! brute-force optimum for small graphs.

pub mod centrality;
pub mod error;
pub mod graph;
pub mod greedy;
pub mod harness;
pub mod linalg;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeVector, Graph};
