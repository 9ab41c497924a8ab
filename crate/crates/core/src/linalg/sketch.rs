//! Effective resistances from a random projection of the weighted
//! incidence matrix.
//!
//! With `Q` a `q x m` matrix of independent `±1/sqrt(q)` entries, the rows
//! of `Z = Q W^{1/2} B L†` satisfy `E ||Z (e_u - e_v)||^2 = R_uv`, and
//! `q = O(ln n / eps^2)` rows make every queried estimate an
//! eps-approximation with high probability. Each row costs one Laplacian
//! solve.

use std::collections::BTreeMap;

use super::solver::{LaplacianSolver, RhsKind, SolverSpec};
use super::{build_laplacian, Laplacian};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, tag};

/// Default constant `C` in `q = ceil(C ln(n) / eps^2)`.
pub const DEFAULT_SKETCH_CONSTANT: f64 = 24.0;

pub fn sketch_rows(n: usize, epsilon: f64, constant: f64) -> usize {
    let ln_n = (n.max(2) as f64).ln();
    ((constant * ln_n / (epsilon * epsilon)).ceil() as usize).max(1)
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "accuracy {epsilon} outside (0, 1/2]"
        )))
    }
}

/// Sketch estimates for `pairs`, aligned with the input order.
pub(crate) fn sketch_resistances(
    solver: &LaplacianSolver<'_>,
    g: &Graph,
    pairs: &[(usize, usize)],
    rows: usize,
    seed: u64,
    tol: f64,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    let scale = 1.0 / (rows as f64).sqrt();
    let sqrt_w: Vec<f64> = g.edges().iter().map(|e| e.w.sqrt() * scale).collect();
    let mut signs = vec![0.0; g.edge_count()];
    let mut rhs = vec![0.0; n];
    let mut acc = vec![0.0; pairs.len()];
    for row in 0..rows as u64 {
        rng::fill_rademacher(&mut rng::stream(seed, &[tag::SKETCH, row]), &mut signs);
        rhs.iter_mut().for_each(|x| *x = 0.0);
        for ((e, s), sw) in g.edges().iter().zip(&signs).zip(&sqrt_w) {
            let c = s * sw;
            rhs[e.u] += c;
            rhs[e.v] -= c;
        }
        let y = solver.solve(&rhs, tol)?.x;
        for (a, &(u, v)) in acc.iter_mut().zip(pairs) {
            let d = y[u] - y[v];
            *a += d * d;
        }
    }
    Ok(acc)
}

pub(crate) fn sketch_on(
    lap: &Laplacian,
    g: &Graph,
    pairs: &[(usize, usize)],
    epsilon: f64,
    constant: f64,
    spec: &SolverSpec,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    for &(u, v) in pairs {
        g.check_node(u)?;
        g.check_node(v)?;
    }
    let solver = LaplacianSolver::new(lap, spec)?;
    let tol = spec.tolerance(RhsKind::Random, epsilon, n, g.max_weight());
    sketch_resistances(
        &solver,
        g,
        pairs,
        sketch_rows(n, epsilon, constant),
        spec.seed,
        tol,
    )
}

/// Estimates `r` with `r ≈_eps R_uv` for every requested pair, with
/// probability at least `1 - 1/n`. Randomness comes from `spec.seed`.
pub fn approx_eff_res(
    g: &Graph,
    pairs: &[(usize, usize)],
    epsilon: f64,
    spec: &SolverSpec,
) -> Result<BTreeMap<(usize, usize), f64>> {
    approx_eff_res_with(g, pairs, epsilon, DEFAULT_SKETCH_CONSTANT, spec)
}

pub fn approx_eff_res_with(
    g: &Graph,
    pairs: &[(usize, usize)],
    epsilon: f64,
    constant: f64,
    spec: &SolverSpec,
) -> Result<BTreeMap<(usize, usize), f64>> {
    check_epsilon(epsilon)?;
    if !(constant > 0.0) {
        return Err(Error::InvalidParameter("sketch constant must be positive".into()));
    }
    g.require_connected()?;
    let lap = build_laplacian(g);
    let est = sketch_on(&lap, g, pairs, epsilon, constant, spec)?;
    Ok(pairs.iter().copied().zip(est).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn within(est: f64, exact: f64, eps: f64) -> bool {
        (-eps).exp() * est <= exact && exact <= eps.exp() * est
    }

    #[test]
    fn tiny_graphs() {
        let spec = SolverSpec::default().with_seed(4);
        let p2 = Graph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        let r = approx_eff_res(&p2, &[(0, 1)], 0.1, &spec).unwrap();
        assert!(within(r[&(0, 1)], 1.0, 0.1));

        let k3 = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let r = approx_eff_res(&k3, &[(0, 1)], 0.1, &spec).unwrap();
        assert!(within(r[&(0, 1)], 2.0 / 3.0, 0.1));

        let p3 = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let r = approx_eff_res(&p3, &[(0, 2), (1, 1)], 0.1, &spec).unwrap();
        assert!(within(r[&(0, 2)], 2.0, 0.1));
        assert_eq!(r[&(1, 1)], 0.0);
    }

    #[test]
    fn parameter_checks() {
        let p2 = Graph::from_edges(2, [(0, 1, 1.0)]).unwrap();
        let spec = SolverSpec::default();
        assert!(approx_eff_res(&p2, &[(0, 1)], 0.0, &spec).is_err());
        assert!(approx_eff_res(&p2, &[(0, 1)], 0.6, &spec).is_err());
        assert!(approx_eff_res(&p2, &[(0, 2)], 0.1, &spec).is_err());
        let split = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(matches!(
            approx_eff_res(&split, &[(0, 1)], 0.1, &spec),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn row_count() {
        // 24 ln(100) / 0.04 = 2763.1
        assert_eq!(sketch_rows(100, 0.2, 24.0), 2764);
    }
}
