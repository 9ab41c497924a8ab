//! Edge selection for one target node: the exact greedy, the solver-based
//! approximate greedy, three baselines, and an exhaustive optimum for small
//! instances.
//!
//! All optimizers minimize `R_v`; `I_v = n / R_v` is reported alongside.

mod approx;
mod baseline;
mod exact;
mod oracle;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use approx::{
    approxi_sm, approxi_sm_with, vreff_comp, vreff_comp_with, vreff_sample_count, ApproxOptions,
    VReffOutput, EXACT_TRACE_LIMIT,
};
pub use baseline::{baseline_select, Strategy};
pub use exact::{exact_sm, exact_sm_from};
pub use oracle::{brute_force_optimum, Optimum, SUBSET_LIMIT};

use crate::centrality::centrality_from_resistance;
use crate::error::{Error, Result};
use crate::graph::{EdgeVector, Graph};
use crate::linalg::PseudoInverse;

/// A non-edge `(target, other)` that may be added with the given weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateEdge {
    pub other: usize,
    pub target: usize,
    pub weight: f64,
}

impl CandidateEdge {
    pub fn vector(&self) -> EdgeVector {
        EdgeVector {
            head: self.target,
            tail: self.other,
        }
    }
}

/// Estimated decrease of `R_v`, with the quantities it was assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainEstimate {
    pub edge: CandidateEdge,
    pub gain: f64,
    /// `(b_e^T L† e_v)^2`.
    pub alpha: f64,
    /// `(1/M) sum_i (b_e^T L† z_i)^2`.
    pub mean_t: f64,
    /// Sketched resistance of the candidate's endpoints.
    pub r_hat: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub edge: CandidateEdge,
    /// The gain the algorithm acted on (exact or estimated).
    pub gain: f64,
    pub r_after: f64,
    pub i_after: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GreedyTrace {
    pub target: usize,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub initial_r: f64,
    pub initial_i: f64,
    pub steps: Vec<GreedyStep>,
    /// Set when the per-step `R_v` values are solver estimates.
    pub estimated: bool,
    /// Departures from the published parameters, e.g. a sample cap.
    pub flags: Vec<String>,
    /// Wall-clock seconds spent selecting each edge.
    #[serde(skip)]
    pub step_seconds: Vec<f64>,
    /// Wall-clock seconds for the whole selection, setup included.
    #[serde(skip)]
    pub total_seconds: f64,
}

/// Equality ignores the timing fields.
impl PartialEq for GreedyTrace {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target
            && self.algorithm == other.algorithm
            && self.seed == other.seed
            && self.initial_r == other.initial_r
            && self.initial_i == other.initial_i
            && self.steps == other.steps
            && self.estimated == other.estimated
            && self.flags == other.flags
    }
}

impl GreedyTrace {
    pub(crate) fn start(target: usize, algorithm: &str, n: usize, r: f64) -> Result<Self> {
        Ok(Self {
            target,
            algorithm: algorithm.to_string(),
            seed: None,
            initial_r: r,
            initial_i: centrality_from_resistance(n, r)?,
            steps: Vec::new(),
            estimated: false,
            flags: Vec::new(),
            step_seconds: Vec::new(),
            total_seconds: 0.0,
        })
    }

    pub(crate) fn push(&mut self, n: usize, edge: CandidateEdge, gain: f64, r_after: f64) -> Result<()> {
        self.steps.push(GreedyStep {
            edge,
            gain,
            r_after,
            i_after: centrality_from_resistance(n, r_after)?,
        });
        Ok(())
    }

    pub fn edges(&self) -> Vec<CandidateEdge> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    pub fn final_r(&self) -> f64 {
        self.steps.last().map_or(self.initial_r, |s| s.r_after)
    }

    pub fn final_i(&self) -> f64 {
        self.steps.last().map_or(self.initial_i, |s| s.i_after)
    }
}

/// One unit-or-given-weight candidate per non-neighbor of `v`, by node id.
pub fn default_candidates(g: &Graph, v: usize, weight: f64) -> Result<Vec<CandidateEdge>> {
    g.check_node(v)?;
    g.require_connected()?;
    check_weight(weight)?;
    let mut adjacent = vec![false; g.node_count()];
    adjacent[v] = true;
    for &(u, _) in g.neighbors(v) {
        adjacent[u] = true;
    }
    Ok((0..g.node_count())
        .filter(|&u| !adjacent[u])
        .map(|other| CandidateEdge {
            other,
            target: v,
            weight,
        })
        .collect())
}

fn check_weight(w: f64) -> Result<()> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("candidate weight {w} must be positive")))
    }
}

pub(crate) fn validate(g: &Graph, v: usize, candidates: &[CandidateEdge], k: usize) -> Result<()> {
    g.check_node(v)?;
    g.require_connected()?;
    let mut seen = HashSet::new();
    for c in candidates {
        g.check_node(c.other)?;
        let bad = |reason: &str| Error::InvalidEdge {
            u: c.target,
            v: c.other,
            reason: reason.into(),
        };
        if c.target != v {
            return Err(bad("candidate is not incident to the target"));
        }
        if c.other == v {
            return Err(bad("candidate is a self-loop"));
        }
        if g.has_edge(v, c.other) {
            return Err(bad("candidate edge already exists"));
        }
        if !seen.insert(c.other) {
            return Err(bad("duplicate candidate"));
        }
        check_weight(c.weight)?;
    }
    if k > candidates.len() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the {} candidates for target {v}",
            candidates.len()
        )));
    }
    Ok(())
}

/// Candidates in ascending order of the other endpoint.
pub(crate) fn sorted(candidates: &[CandidateEdge]) -> Vec<CandidateEdge> {
    let mut c = candidates.to_vec();
    c.sort_by_key(|c| c.other);
    c
}

/// Relative tolerance under which two gains count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Index of the largest gain; near-ties go to the earliest entry.
pub(crate) fn argmax(gains: &[f64]) -> usize {
    let best = gains.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let floor = best - TIE_TOLERANCE * best.abs();
    gains.iter().position(|&g| g >= floor).unwrap_or(0)
}

/// `R_v` after adding `edges` to the graph whose pseudoinverse is `p`.
pub fn resistance_after(p: &PseudoInverse, v: usize, edges: &[CandidateEdge]) -> Result<f64> {
    let mut q = p.clone();
    for e in edges {
        q.add_edge(e.vector(), e.weight);
    }
    Ok(crate::centrality::node_resistance(&q, v)?.value)
}

pub(crate) fn augmented(g: &Graph, edges: &[CandidateEdge]) -> Result<Graph> {
    let mut h = g.clone();
    for e in edges {
        h.add_edge(e.target, e.other, e.weight)?;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1.0))).unwrap()
    }

    fn others(c: &[CandidateEdge]) -> Vec<usize> {
        c.iter().map(|c| c.other).collect()
    }

    #[test]
    fn candidates() {
        let p4 = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(others(&default_candidates(&p4, 0, 1.0).unwrap()), vec![2, 3]);
        let k3 = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(default_candidates(&k3, 1, 1.0).unwrap().is_empty());
        let star = unit(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(default_candidates(&star, 0, 1.0).unwrap().is_empty());
        assert_eq!(others(&default_candidates(&star, 2, 1.0).unwrap()), vec![1, 3]);
        assert!(default_candidates(&star, 2, 0.0).is_err());
    }

    #[test]
    fn validation() {
        let p4 = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = default_candidates(&p4, 0, 1.0).unwrap();
        assert!(validate(&p4, 0, &c, 2).is_ok());
        assert!(validate(&p4, 0, &c, 3).is_err());
        let existing = [CandidateEdge { other: 1, target: 0, weight: 1.0 }];
        assert!(validate(&p4, 0, &existing, 1).is_err());
        let dup = [c[0], c[0]];
        assert!(validate(&p4, 0, &dup, 1).is_err());
        let wrong = [CandidateEdge { other: 3, target: 1, weight: 1.0 }];
        assert!(validate(&p4, 0, &wrong, 1).is_err());
    }

    #[test]
    fn argmax_prefers_first_on_ties() {
        assert_eq!(argmax(&[1.0, 3.0, 2.0]), 1);
        assert_eq!(argmax(&[2.0, 2.0 * (1.0 + 1e-14), 1.0]), 0);
        assert_eq!(argmax(&[2.0, 2.0 * (1.0 + 1e-9)]), 1);
    }
}
