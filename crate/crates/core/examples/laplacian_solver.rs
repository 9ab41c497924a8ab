//! Solving `L y = z` on a generated graph with both preconditioners, and
//! checking the answer against the dense pseudoinverse.

use infocent::graph::generate_ba;
use infocent::linalg::{
    build_laplacian, pseudoinverse, GroundedFactor, LaplacianSolver, Preconditioner, SolverSpec,
};
use infocent::Result;

pub fn run(n: usize) -> Result<Vec<(Preconditioner, usize, f64)>> {
    let g = generate_ba(n, 2, 3)?;
    let lap = build_laplacian(&g);
    let factor = GroundedFactor::new(&lap)?;
    println!(
        "BA({n}, 2): {} edges, grounded at node {}, factor nnz {}",
        g.edge_count(),
        factor.ground(),
        factor.factor_nnz()
    );

    let z: Vec<f64> = (0..n).map(|i| ((i * 7919) % 13) as f64 - 6.0).collect();
    let exact = pseudoinverse(&lap)?.times(&z);

    let mut out = Vec::new();
    for preconditioner in [Preconditioner::GroundedCholesky, Preconditioner::Jacobi] {
        let spec = SolverSpec {
            preconditioner,
            ..SolverSpec::default()
        };
        let solver = LaplacianSolver::new(&lap, &spec)?;
        let sol = solver.solve(&z, spec.residual_target)?;
        let err = sol
            .x
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "{preconditioner:?}: {} iterations, residual {:.2e}, max error vs dense {err:.2e}",
            sol.iterations, sol.residual
        );
        out.push((preconditioner, sol.iterations, err));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run(400).map(|_| ())
}
