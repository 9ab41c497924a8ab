//! Exact greedy against the exhaustive optimum on Zachary's karate club.

use infocent::graph::load_edge_list;
use infocent::greedy::{brute_force_optimum, default_candidates, exact_sm};
use infocent::Result;

pub fn karate_path() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/data/karate.txt")
}

/// Mean over targets of `I_greedy / I_optimal` for each `k` in `1..=max_k`.
pub fn run(targets: &[u64], max_k: usize) -> Result<Vec<f64>> {
    let loaded = load_edge_list(karate_path(), false)?;
    let g = &loaded.graph;
    let mut ratios = vec![0.0; max_k];
    for &label in targets {
        let v = loaded.ids.id_of(label).expect("label present");
        let c = default_candidates(g, v, 1.0)?;
        let greedy = exact_sm(g, v, &c, max_k)?;
        for k in 1..=max_k {
            let opt = brute_force_optimum(g, v, &c, k)?;
            let n = g.node_count() as f64;
            let ratio = greedy.steps[k - 1].i_after / (n / opt.r);
            ratios[k - 1] += ratio / targets.len() as f64;
        }
    }
    for (k, r) in ratios.iter().enumerate() {
        println!("k = {}: mean I_greedy / I_optimal = {r:.5}", k + 1);
    }
    Ok(ratios)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(&[5, 12, 17, 25, 27], 4).map(|_| ())
}
