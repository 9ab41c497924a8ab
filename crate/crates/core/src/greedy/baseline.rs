use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{sorted, validate, CandidateEdge, GreedyTrace};
use crate::centrality::{node_resistance, rank_by_centrality};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{build_laplacian, pseudoinverse};
use crate::rng::{self, tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Random,
    TopDegree,
    TopCent,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::TopDegree => "top-degree",
            Strategy::TopCent => "top-cent",
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Strategy::Random),
            "top-degree" => Ok(Strategy::TopDegree),
            "top-cent" => Ok(Strategy::TopCent),
            _ => Err(Error::InvalidParameter(format!("unknown baseline strategy {s:?}"))),
        }
    }
}

/// Pick `k` candidates without looking at gains, then insert them in the
/// chosen order and record the exact `R_v` after each insertion.
///
/// Degree and centrality ranks are taken on the original graph; ties go to
/// the smaller node id.
pub fn baseline_select(
    g: &Graph,
    v: usize,
    candidates: &[CandidateEdge],
    k: usize,
    strategy: Strategy,
    seed: u64,
) -> Result<GreedyTrace> {
    validate(g, v, candidates, k)?;
    let start = Instant::now();
    let mut p = pseudoinverse(&build_laplacian(g))?;
    let live = sorted(candidates);
    let picked: Vec<CandidateEdge> = match strategy {
        Strategy::Random => {
            let mut r = rng::stream(seed, &[tag::BASELINE]);
            rand::seq::index::sample(&mut r, live.len(), k)
                .into_iter()
                .map(|i| live[i])
                .collect()
        }
        Strategy::TopDegree => {
            let mut by = live.clone();
            by.sort_by(|a, b| g.degree(b.other).cmp(&g.degree(a.other)).then(a.other.cmp(&b.other)));
            by.truncate(k);
            by
        }
        Strategy::TopCent => {
            let mut rank = vec![0; g.node_count()];
            for (i, s) in rank_by_centrality(&p)?.iter().enumerate() {
                rank[s.node] = i;
            }
            let mut by = live.clone();
            by.sort_by_key(|c| rank[c.other]);
            by.truncate(k);
            by
        }
    };

    let n = g.node_count();
    let mut trace = GreedyTrace::start(v, strategy.name(), n, node_resistance(&p, v)?.value)?;
    if strategy == Strategy::Random {
        trace.seed = Some(seed);
    }
    for edge in picked {
        let step = Instant::now();
        let before = node_resistance(&p, v)?.value;
        p.add_edge(edge.vector(), edge.weight);
        let after = node_resistance(&p, v)?.value;
        trace.step_seconds.push(step.elapsed().as_secs_f64());
        trace.push(n, edge, before - after, after)?;
    }
    trace.total_seconds = start.elapsed().as_secs_f64();
    Ok(trace)
}
