//! Solver-based greedy against the exact greedy on a small-world graph.

use std::time::Instant;

use infocent::graph::generate_ws;
use infocent::greedy::{approxi_sm, default_candidates, exact_sm};
use infocent::linalg::SolverSpec;
use infocent::Result;

pub fn run(n: usize, k: usize, epsilon: f64) -> Result<(f64, f64)> {
    let g = generate_ws(n, 4, 0.1, 2)?;
    let v = n / 3;
    let c = default_candidates(&g, v, 1.0)?;

    let t = Instant::now();
    let exact = exact_sm(&g, v, &c, k)?;
    let exact_secs = t.elapsed().as_secs_f64();
    let approx = approxi_sm(&g, v, &c, k, epsilon, &SolverSpec::default().with_seed(9))?;

    println!("WS({n}, 4, 0.1), target {v}, k = {k}, eps = {epsilon}");
    println!("exact : I_v {:.5} -> {:.5} in {exact_secs:.2}s", exact.initial_i, exact.final_i());
    println!(
        "approx: I_v {:.5} -> {:.5} in {:.2}s",
        approx.initial_i,
        approx.final_i(),
        approx.total_seconds
    );
    let pick = |t: &infocent::greedy::GreedyTrace| t.edges().iter().map(|e| e.other).collect::<Vec<_>>();
    println!("exact picks  {:?}\napprox picks {:?}", pick(&exact), pick(&approx));
    Ok((exact.final_i(), approx.final_i()))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(300, 5, 0.3).map(|_| ())
}
