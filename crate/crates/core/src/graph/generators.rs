//! Barabási–Albert and Watts–Strogatz model graphs with explicit seeds.

use std::collections::BTreeSet;

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng;

const WS_ATTEMPTS: usize = 100;

fn unit_graph(n: usize, edges: BTreeSet<(usize, usize)>) -> Result<Graph> {
    Graph::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
}

/// Preferential attachment: a clique on `attach + 1` seed nodes, then every
/// new node links to `attach` distinct existing nodes drawn with probability
/// proportional to degree.
pub fn generate_ba(n: usize, attach: usize, seed: u64) -> Result<Graph> {
    if attach < 1 {
        return Err(Error::InvalidParameter("BA: attach must be at least 1".into()));
    }
    if n < attach + 1 {
        return Err(Error::InvalidParameter(format!(
            "BA: n = {n} must be at least attach + 1 = {}",
            attach + 1
        )));
    }
    let mut rng = rng::stream(seed, &[]);
    let mut edges = BTreeSet::new();
    // every node appears once per incident edge
    let mut ends: Vec<usize> = Vec::new();
    for u in 0..=attach {
        for v in (u + 1)..=attach {
            edges.insert((u, v));
            ends.extend([u, v]);
        }
    }
    for new in (attach + 1)..n {
        let mut chosen: Vec<usize> = Vec::with_capacity(attach);
        while chosen.len() < attach {
            let t = ends[rng.random_range(0..ends.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for t in chosen {
            edges.insert((t, new));
            ends.extend([t, new]);
        }
    }
    unit_graph(n, edges)
}

fn ws_once(n: usize, k_ring: usize, p: f64, seed: u64) -> Result<Graph> {
    let mut rng = rng::stream(seed, &[]);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for i in 0..n {
        for j in 1..=k_ring / 2 {
            let t = (i + j) % n;
            adj[i].insert(t);
            adj[t].insert(i);
        }
    }
    for j in 1..=k_ring / 2 {
        for i in 0..n {
            let t = (i + j) % n;
            if !adj[i].contains(&t) || rng.random::<f64>() >= p {
                continue;
            }
            if adj[i].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != i && !adj[i].contains(&w) {
                    break w;
                }
            };
            adj[i].remove(&t);
            adj[t].remove(&i);
            adj[i].insert(w);
            adj[w].insert(i);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    unit_graph(n, edges)
}

/// Ring lattice with `k_ring / 2` neighbours per side, each lattice edge
/// rewired with probability `p_rewire`. Disconnected draws are retried with
/// seed + 1, up to a bounded number of attempts.
pub fn generate_ws(n: usize, k_ring: usize, p_rewire: f64, seed: u64) -> Result<Graph> {
    if k_ring % 2 != 0 || k_ring < 2 || k_ring >= n {
        return Err(Error::InvalidParameter(format!(
            "WS: ring degree must be even with 2 <= k < n (got k = {k_ring}, n = {n})"
        )));
    }
    if !(0.0..=1.0).contains(&p_rewire) {
        return Err(Error::InvalidParameter(format!(
            "WS: rewiring probability {p_rewire} outside [0, 1]"
        )));
    }
    for attempt in 0..WS_ATTEMPTS {
        let g = ws_once(n, k_ring, p_rewire, seed.wrapping_add(attempt as u64))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::GeneratorFailed {
        attempts: WS_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ba_small_is_a_tree() {
        let g = generate_ba(3, 1, 11).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_connected());
    }

    #[test]
    fn ba_fifty() {
        let g = generate_ba(50, 2, 5).unwrap();
        assert_eq!(g.node_count(), 50);
        assert!(g.is_connected());
        // seed triangle plus two edges per later node
        assert_eq!(g.edge_count(), 3 + 47 * 2);
        assert_eq!(g, generate_ba(50, 2, 5).unwrap());
        assert_ne!(g, generate_ba(50, 2, 6).unwrap());
    }

    #[test]
    fn ba_parameter_errors() {
        assert!(generate_ba(5, 0, 1).is_err());
        assert!(generate_ba(2, 2, 1).is_err());
    }

    #[test]
    fn ws_ring_without_rewiring() {
        let g = generate_ws(6, 2, 0.0, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
        for v in 0..6 {
            assert_eq!(g.degree(v), 2);
            assert!(g.has_edge(v, (v + 1) % 6));
        }
    }

    #[test]
    fn ws_fifty() {
        let g = generate_ws(50, 4, 0.1, 7).unwrap();
        assert_eq!(g.node_count(), 50);
        assert_eq!(g.edge_count(), 100);
        assert!(g.is_connected());
        assert_eq!(g, generate_ws(50, 4, 0.1, 7).unwrap());
    }

    #[test]
    fn ws_parameter_errors() {
        assert!(generate_ws(5, 3, 0.1, 1).is_err());
        assert!(generate_ws(5, 0, 0.1, 1).is_err());
        assert!(generate_ws(4, 4, 0.1, 1).is_err());
        assert!(generate_ws(10, 4, 1.5, 1).is_err());
    }
}
