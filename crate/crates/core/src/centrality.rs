//! Resistance distances and information centrality.
//!
//! `R_v` (the sum of resistance distances from `v`) is computed three ways:
//! from the pseudoinverse diagonal and trace, as the trace of the inverse
//! grounded Laplacian, and pairwise. `I_v = n / R_v`.

use nalgebra::{Cholesky, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeVector, Graph};
use crate::linalg::{build_laplacian, check_dense, pseudoinverse, PseudoInverse};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeResistance {
    pub node: usize,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralityScore {
    pub node: usize,
    pub value: f64,
}

/// `n / R_v`; undefined (error) for a single node.
pub fn centrality_from_resistance(n: usize, r: f64) -> Result<f64> {
    if n <= 1 {
        Err(Error::SingleNode)
    } else {
        Ok(n as f64 / r)
    }
}

impl NodeResistance {
    pub fn centrality(&self, n: usize) -> Result<CentralityScore> {
        Ok(CentralityScore {
            node: self.node,
            value: centrality_from_resistance(n, self.value)?,
        })
    }
}

fn check(p: &PseudoInverse, v: usize) -> Result<()> {
    if v < p.dim() {
        Ok(())
    } else {
        Err(Error::NodeOutOfRange { node: v, n: p.dim() })
    }
}

/// `R_uv = L†_uu + L†_vv - 2 L†_uv`.
pub fn resistance_pair(p: &PseudoInverse, u: usize, v: usize) -> Result<f64> {
    check(p, u)?;
    check(p, v)?;
    if u == v {
        return Ok(0.0);
    }
    Ok(p.get(u, u) + p.get(v, v) - 2.0 * p.get(u, v))
}

/// `R_v = n L†_vv + tr(L†)`.
pub fn node_resistance(p: &PseudoInverse, v: usize) -> Result<NodeResistance> {
    check(p, v)?;
    Ok(NodeResistance {
        node: v,
        value: p.dim() as f64 * p.get(v, v) + p.trace(),
    })
}

/// `R_v = tr(L_v^{-1})` with `L_v` the Laplacian minus row and column `v`.
pub fn node_resistance_grounded(g: &Graph, v: usize) -> Result<NodeResistance> {
    g.check_node(v)?;
    g.require_connected()?;
    let n = g.node_count();
    check_dense(n)?;
    if n == 1 {
        return Ok(NodeResistance { node: v, value: 0.0 });
    }
    let grounded = build_laplacian(g).to_dense().remove_row(v).remove_column(v);
    let chol = Cholesky::new(grounded).ok_or(Error::Disconnected)?;
    Ok(NodeResistance {
        node: v,
        value: chol.inverse().trace(),
    })
}

pub fn information_centrality(g: &Graph, v: usize) -> Result<CentralityScore> {
    node_resistance_grounded(g, v)?.centrality(g.node_count())
}

/// Pairwise transmitted information `I_uv = 1 / (B^-1_uu + B^-1_vv - 2 B^-1_uv)`
/// with `B = L + J`.
#[derive(Debug, Clone)]
pub struct PairwiseInformation {
    b_inv: DMatrix<f64>,
}

pub fn pairwise_information(g: &Graph) -> Result<PairwiseInformation> {
    g.require_connected()?;
    check_dense(g.node_count())?;
    let mut b = build_laplacian(g).to_dense();
    b.add_scalar_mut(1.0);
    let chol = Cholesky::new(b).ok_or(Error::Disconnected)?;
    Ok(PairwiseInformation {
        b_inv: chol.inverse(),
    })
}

impl PairwiseInformation {
    pub fn dim(&self) -> usize {
        self.b_inv.nrows()
    }

    /// `I_uv`; infinite on the diagonal so that `1 / I_vv = 0`.
    pub fn between(&self, u: usize, v: usize) -> f64 {
        if u == v {
            return f64::INFINITY;
        }
        let b = &self.b_inv;
        1.0 / (b[(u, u)] + b[(v, v)] - 2.0 * b[(u, v)])
    }

    /// Harmonic mean `n / sum_u 1 / I_uv`.
    pub fn harmonic_centrality(&self, v: usize) -> f64 {
        let n = self.dim();
        let s: f64 = (0..n).map(|u| 1.0 / self.between(u, v)).sum();
        n as f64 / s
    }
}

pub fn information_centrality_via_b(g: &Graph, u: usize, v: usize) -> Result<f64> {
    g.check_node(u)?;
    g.check_node(v)?;
    Ok(pairwise_information(g)?.between(u, v))
}

/// Decrease of `R_v` caused by adding edge `e` (incident to `v`) with weight
/// `w`: `w (n (L† b)_v^2 + ||L† b||^2) / (1 + w b^T L† b)`.
pub fn marginal_gain_exact(
    p: &PseudoInverse,
    e: EdgeVector,
    w: f64,
    v: usize,
    n: usize,
) -> Result<f64> {
    if !e.touches(v) {
        return Err(Error::NotIncident {
            head: e.head,
            tail: e.tail,
            target: v,
        });
    }
    check(p, e.head)?;
    check(p, e.tail)?;
    Ok(gain_from_column(&p.apply_edge(e), e, w, v, n))
}

pub(crate) fn gain_from_column(x: &[f64], e: EdgeVector, w: f64, v: usize, n: usize) -> f64 {
    let norm2: f64 = x.iter().map(|a| a * a).sum();
    w * (n as f64 * x[v] * x[v] + norm2) / (1.0 + w * e.dot(x))
}

/// All nodes by descending `I_v`, ties by ascending id.
pub fn rank_by_centrality(p: &PseudoInverse) -> Result<Vec<CentralityScore>> {
    let n = p.dim();
    let tr = p.trace();
    let mut scores = (0..n)
        .map(|v| {
            Ok(CentralityScore {
                node: v,
                value: centrality_from_resistance(n, n as f64 * p.get(v, v) + tr)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    scores.sort_by(|a, b| b.value.total_cmp(&a.value).then(a.node.cmp(&b.node)));
    Ok(scores)
}

pub fn rank_all_by_centrality(g: &Graph) -> Result<Vec<CentralityScore>> {
    g.require_connected()?;
    rank_by_centrality(&pseudoinverse(&build_laplacian(g))?)
}
