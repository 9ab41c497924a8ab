#![allow(dead_code)]

use infocent::graph::Graph;
use infocent::linalg::{build_laplacian, pseudoinverse, PseudoInverse};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random spanning tree plus independent extra edges with probability `p`.
/// Weights are 1, or uniform in [0.5, 2] when `weighted`.
pub fn random_connected(n: usize, p: f64, weighted: bool, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    let w = |rng: &mut ChaCha8Rng| if weighted { rng.random_range(0.5..2.0) } else { 1.0 };
    for v in 1..n {
        let u = rng.random_range(0..v);
        let wt = w(&mut rng);
        g.add_edge(u, v, wt).unwrap();
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) && rng.random_bool(p) {
                let wt = w(&mut rng);
                g.add_edge(u, v, wt).unwrap();
            }
        }
    }
    g
}

pub fn pinv(g: &Graph) -> PseudoInverse {
    pseudoinverse(&build_laplacian(g)).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

/// `a ≈_eps b`.
pub fn eps_close(a: f64, b: f64, eps: f64) -> bool {
    (-eps).exp() * a <= b && b <= eps.exp() * a
}
