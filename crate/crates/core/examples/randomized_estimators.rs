//! Hutchinson trace estimation of `L†` and sketched effective resistances,
//! compared with exact values.

use infocent::centrality::resistance_pair;
use infocent::graph::generate_ws;
use infocent::linalg::{
    approx_eff_res, build_laplacian, hutchinson_sample_count, hutchinson_trace, pseudoinverse,
    SolverSpec,
};
use infocent::Result;

pub struct Summary {
    pub trace_exact: f64,
    pub trace_estimate: f64,
    pub worst_log_ratio: f64,
}

pub fn run(n: usize, seed: u64) -> Result<Summary> {
    let g = generate_ws(n, 4, 0.2, seed)?;
    let p = pseudoinverse(&build_laplacian(&g))?;

    let samples = hutchinson_sample_count(0.3, 0.1, n - 1);
    let trace_estimate = hutchinson_trace(|x| p.times(x), n, samples, seed)?;
    println!(
        "tr(L†) = {:.4}, Hutchinson with {samples} samples: {trace_estimate:.4}",
        p.trace()
    );

    let pairs: Vec<(usize, usize)> = (1..n).step_by(n / 10).map(|u| (0, u)).collect();
    let est = approx_eff_res(&g, &pairs, 0.2, &SolverSpec::default().with_seed(seed))?;
    let mut worst: f64 = 0.0;
    for &(u, v) in &pairs {
        let exact = resistance_pair(&p, u, v)?;
        let r = est[&(u, v)];
        worst = worst.max((r / exact).ln().abs());
        println!("R({u},{v}) exact {exact:.4} sketch {r:.4}");
    }
    println!("largest |ln(estimate / exact)| = {worst:.4} (target 0.2)");
    Ok(Summary {
        trace_exact: p.trace(),
        trace_estimate,
        worst_log_ratio: worst,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(150, 1).map(|_| ())
}
