use serde::{Deserialize, Serialize};

use super::{augmented, sorted, validate, CandidateEdge};
use crate::centrality::node_resistance_grounded;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest number of subsets the exhaustive search will evaluate.
pub const SUBSET_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub edges: Vec<CandidateEdge>,
    pub r: f64,
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k as u128 {
        c = c * (n as u128 - i) / (i + 1);
        if c > SUBSET_LIMIT * 1000 {
            return c;
        }
    }
    c
}

/// Minimum of `R_v(S)` over all `k`-subsets of the candidates, each
/// evaluated from scratch through the grounded Laplacian. Among equal
/// values the lexicographically first subset (by other endpoint) wins.
pub fn brute_force_optimum(
    g: &Graph,
    v: usize,
    candidates: &[CandidateEdge],
    k: usize,
) -> Result<Optimum> {
    validate(g, v, candidates, k)?;
    let pool = sorted(candidates);
    let subsets = binomial(pool.len(), k);
    if subsets > SUBSET_LIMIT {
        return Err(Error::CombinatorialGuard {
            subsets,
            limit: SUBSET_LIMIT,
        });
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best: Option<Optimum> = None;
    loop {
        let edges: Vec<CandidateEdge> = idx.iter().map(|&i| pool[i]).collect();
        let r = node_resistance_grounded(&augmented(g, &edges)?, v)?.value;
        if best.as_ref().is_none_or(|b| r < b.r - 1e-12 * b.r) {
            best = Some(Optimum { edges, r });
        }
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] < pool.len() - k + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(best.expect("at least one subset"))
}
