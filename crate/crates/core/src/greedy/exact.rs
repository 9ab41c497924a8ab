use std::time::Instant;

use super::{argmax, sorted, validate, CandidateEdge, GreedyTrace};
use crate::centrality::{gain_from_column, node_resistance};
use crate::error::Result;
use crate::graph::Graph;
use crate::linalg::{build_laplacian, pseudoinverse, PseudoInverse};

/// Exact greedy: one dense pseudoinverse, then `k` rounds of exact gains and
/// rank-1 updates.
pub fn exact_sm(g: &Graph, v: usize, candidates: &[CandidateEdge], k: usize) -> Result<GreedyTrace> {
    validate(g, v, candidates, k)?;
    let start = Instant::now();
    let p = pseudoinverse(&build_laplacian(g))?;
    let setup = start.elapsed().as_secs_f64();
    let mut trace = exact_sm_from(p, v, candidates, k)?;
    trace.total_seconds += setup;
    Ok(trace)
}

/// [`exact_sm`] on an already computed pseudoinverse, which is consumed.
/// Candidates are assumed valid for the graph `p` belongs to.
pub fn exact_sm_from(
    mut p: PseudoInverse,
    v: usize,
    candidates: &[CandidateEdge],
    k: usize,
) -> Result<GreedyTrace> {
    let n = p.dim();
    let start = Instant::now();
    let mut trace = GreedyTrace::start(v, "exact", n, node_resistance(&p, v)?.value)?;
    let mut live = sorted(candidates);
    for _ in 0..k {
        let step = Instant::now();
        let gains: Vec<f64> = live
            .iter()
            .map(|c| {
                let e = c.vector();
                gain_from_column(&p.apply_edge(e), e, c.weight, v, n)
            })
            .collect();
        let chosen = live.remove(argmax(&gains));
        let gain = gains.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        p.add_edge(chosen.vector(), chosen.weight);
        trace.step_seconds.push(step.elapsed().as_secs_f64());
        trace.push(n, chosen, gain, node_resistance(&p, v)?.value)?;
    }
    trace.total_seconds = start.elapsed().as_secs_f64();
    Ok(trace)
}
