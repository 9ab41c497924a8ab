//! Greedy selection against the random, top-degree and top-centrality
//! heuristics, averaged over a few targets.

use infocent::graph::generate_ws;
use infocent::greedy::{baseline_select, default_candidates, exact_sm, Strategy};
use infocent::Result;

pub fn run(n: usize, k: usize, targets: &[usize]) -> Result<Vec<(String, f64)>> {
    let g = generate_ws(n, 4, 0.1, 5)?;
    let mut rows = vec![
        ("exact".to_string(), 0.0),
        ("random".to_string(), 0.0),
        ("top-degree".to_string(), 0.0),
        ("top-cent".to_string(), 0.0),
    ];
    let share = 1.0 / targets.len() as f64;
    for &v in targets {
        let c = default_candidates(&g, v, 1.0)?;
        rows[0].1 += share * exact_sm(&g, v, &c, k)?.final_i();
        for (i, s) in [Strategy::Random, Strategy::TopDegree, Strategy::TopCent].into_iter().enumerate() {
            rows[i + 1].1 += share * baseline_select(&g, v, &c, k, s, 17)?.final_i();
        }
    }
    for (name, i) in &rows {
        println!("{name:10} mean I_v after {k} edges: {i:.5}");
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(200, 8, &[3, 50, 120]).map(|_| ())
}
