//! Laplacians, the dense pseudoinverse and its rank-1 update, the
//! Laplacian solver, and the randomized estimators built on it.

mod laplacian;
mod ldl;
mod pinv;
mod sketch;
mod solver;
mod trace;

pub use laplacian::{build_laplacian, Laplacian};
pub use ldl::GroundedFactor;
pub use pinv::{pseudoinverse, sherman_morrison_update, PseudoInverse, DENSE_LIMIT};
pub use sketch::{approx_eff_res, approx_eff_res_with, sketch_rows, DEFAULT_SKETCH_CONSTANT};
pub use solver::{
    lapl_solve, LaplacianSolver, Preconditioner, RhsKind, Solution, SolverSpec, ToleranceMode,
    MIN_TOLERANCE,
};
pub use trace::{hutchinson_sample_count, hutchinson_samples, hutchinson_trace};

pub(crate) use pinv::check_dense;
pub(crate) use sketch::{check_epsilon, sketch_resistances};
