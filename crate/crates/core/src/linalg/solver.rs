//! Laplacian systems `L y = z` on the zero-sum subspace.
//!
//! The contract every backend must meet: for `z' = z - mean(z) 1`, return a
//! zero-mean `y` with `||y - L† z'||_L <= tol * ||L† z'||_L`.
//!
//! The iteration is preconditioned conjugate gradients. It stops on the
//! preconditioned residual `sqrt(r^T P r) / sqrt(z'^T P z')`; with the
//! grounded factorization `P = L†` on zero-sum vectors, so this ratio is
//! exactly the L-norm error ratio above.

use serde::{Deserialize, Serialize};

use super::ldl::GroundedFactor;
use super::Laplacian;
use crate::error::{Error, Result};

/// Guard applied to tolerance targets that would otherwise underflow.
pub const MIN_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ToleranceMode {
    /// The worst-case tolerances from the accuracy bound,
    /// `eps n^-8 w_max^-4 / 72` for the random right-hand sides and
    /// `eps n^-9 w_max^-4 / 72` for `e_v`, clamped below at
    /// [`MIN_TOLERANCE`].
    #[serde(rename = "literal")]
    BoundDerived,
    /// `min(eps / 10, residual_target)`.
    Practical,
}

impl std::str::FromStr for ToleranceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" | "paper-literal" => Ok(Self::BoundDerived),
            "practical" => Ok(Self::Practical),
            _ => Err(Error::InvalidParameter(format!("unknown solver mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preconditioner {
    Jacobi,
    GroundedCholesky,
}

impl std::str::FromStr for Preconditioner {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jacobi" => Ok(Self::Jacobi),
            "grounded-cholesky" => Ok(Self::GroundedCholesky),
            _ => Err(Error::InvalidParameter(format!("unknown preconditioner {s:?}"))),
        }
    }
}

/// Which right-hand side family a tolerance is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsKind {
    /// Random ±1 vectors and resistance sketches.
    Random,
    /// The target's indicator `e_v`.
    Indicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSpec {
    pub mode: ToleranceMode,
    pub residual_target: f64,
    pub max_iterations: usize,
    pub seed: u64,
    pub preconditioner: Preconditioner,
}

impl Default for SolverSpec {
    fn default() -> Self {
        Self {
            mode: ToleranceMode::Practical,
            residual_target: 1e-8,
            max_iterations: 1000,
            seed: 0,
            preconditioner: Preconditioner::GroundedCholesky,
        }
    }
}

impl SolverSpec {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.residual_target > 0.0 && self.residual_target < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "residual target {} outside (0, 1)",
                self.residual_target
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter("max iterations must be at least 1".into()));
        }
        Ok(())
    }

    /// Relative tolerance for solves issued by the estimators at accuracy
    /// `epsilon` on a graph with `n` nodes and largest weight `w_max`.
    pub fn tolerance(&self, kind: RhsKind, epsilon: f64, n: usize, w_max: f64) -> f64 {
        match self.mode {
            ToleranceMode::Practical => (epsilon / 10.0).min(self.residual_target),
            ToleranceMode::BoundDerived => {
                let power = match kind {
                    RhsKind::Random => 8,
                    RhsKind::Indicator => 9,
                };
                let t = epsilon * (n as f64).powi(-power) * w_max.powi(-4) / 72.0;
                t.max(MIN_TOLERANCE)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Final preconditioned relative residual.
    pub residual: f64,
}

enum Precond {
    Jacobi(Vec<f64>),
    Grounded(GroundedFactor),
}

impl Precond {
    fn apply(&self, r: &[f64]) -> Vec<f64> {
        match self {
            Precond::Jacobi(inv_diag) => {
                let mut s: Vec<f64> = r.iter().zip(inv_diag).map(|(a, b)| a * b).collect();
                project(&mut s);
                s
            }
            Precond::Grounded(f) => f.apply_pinv(r),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Subtract the mean.
pub(crate) fn project(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

/// A prepared solver for one Laplacian. Preparation (the factorization for
/// the grounded preconditioner) happens once; solves are then independent
/// and may be issued in any order.
pub struct LaplacianSolver<'a> {
    lap: &'a Laplacian,
    pre: Precond,
    max_iterations: usize,
}

impl<'a> LaplacianSolver<'a> {
    pub fn new(lap: &'a Laplacian, spec: &SolverSpec) -> Result<Self> {
        spec.validate()?;
        if lap.dim() == 0 {
            return Err(Error::EmptyGraph);
        }
        if !lap.is_connected() {
            return Err(Error::Disconnected);
        }
        let pre = match spec.preconditioner {
            Preconditioner::Jacobi => {
                Precond::Jacobi(lap.diagonal().iter().map(|d| 1.0 / d).collect())
            }
            Preconditioner::GroundedCholesky => Precond::Grounded(GroundedFactor::new(lap)?),
        };
        Ok(Self {
            lap,
            pre,
            max_iterations: spec.max_iterations,
        })
    }

    pub fn laplacian(&self) -> &Laplacian {
        self.lap
    }

    /// Solve `L y = z - mean(z) 1` to relative tolerance `tol`.
    pub fn solve(&self, z: &[f64], tol: f64) -> Result<Solution> {
        let n = self.lap.dim();
        let mut r = z.to_vec();
        project(&mut r);
        let mut s = self.pre.apply(&r);
        let mut rs = dot(&r, &s);
        let norm_b = rs.max(0.0).sqrt();
        let mut x = vec![0.0; n];
        if norm_b == 0.0 {
            return Ok(Solution {
                x,
                iterations: 0,
                residual: 0.0,
            });
        }
        let mut p = s.clone();
        let mut ap = vec![0.0; n];
        let mut residual = 1.0;
        for it in 1..=self.max_iterations {
            self.lap.apply(&p, &mut ap);
            let alpha = rs / dot(&p, &ap);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            project(&mut r);
            s = self.pre.apply(&r);
            let rs_next = dot(&r, &s);
            residual = rs_next.max(0.0).sqrt() / norm_b;
            if residual <= tol {
                project(&mut x);
                return Ok(Solution {
                    x,
                    iterations: it,
                    residual,
                });
            }
            let beta = rs_next / rs;
            rs = rs_next;
            for i in 0..n {
                p[i] = s[i] + beta * p[i];
            }
        }
        Err(Error::SolverNotConverged {
            iterations: self.max_iterations,
            achieved: residual,
            target: tol,
        })
    }
}

/// One-shot solve at the spec's residual target.
pub fn lapl_solve(l: &Laplacian, z: &[f64], spec: &SolverSpec) -> Result<Vec<f64>> {
    if z.len() != l.dim() {
        return Err(Error::InvalidParameter(format!(
            "right-hand side has length {}, expected {}",
            z.len(),
            l.dim()
        )));
    }
    let solver = LaplacianSolver::new(l, spec)?;
    Ok(solver.solve(z, spec.residual_target)?.x)
}
