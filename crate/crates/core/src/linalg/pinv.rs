use nalgebra::{Cholesky, DMatrix, DVector};

use super::Laplacian;
use crate::error::{Error, Result};
use crate::graph::EdgeVector;

/// Largest `n` for which the dense `n x n` pseudoinverse is formed.
pub const DENSE_LIMIT: usize = 20_000;

/// Dense symmetric `L†`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoInverse {
    m: DMatrix<f64>,
}

pub(crate) fn check_dense(n: usize) -> Result<()> {
    if n > DENSE_LIMIT {
        Err(Error::DenseTooLarge {
            n,
            limit: DENSE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// `L† = (L + J/n)^{-1} - J/n`, through a dense Cholesky factorization.
pub fn pseudoinverse(l: &Laplacian) -> Result<PseudoInverse> {
    let n = l.dim();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    check_dense(n)?;
    if !l.is_connected() {
        return Err(Error::Disconnected);
    }
    let shift = 1.0 / n as f64;
    let mut a = l.to_dense();
    a.add_scalar_mut(shift);
    let chol = Cholesky::new(a).ok_or(Error::Disconnected)?;
    let mut m = chol.inverse();
    m.add_scalar_mut(-shift);
    // restore exact symmetry lost to rounding in the triangular solves
    for j in 0..n {
        for i in (j + 1)..n {
            let s = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = s;
            m[(j, i)] = s;
        }
    }
    Ok(PseudoInverse { m })
}

impl PseudoInverse {
    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn column(&self, j: usize) -> &[f64] {
        let n = self.dim();
        &self.m.as_slice()[j * n..(j + 1) * n]
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    /// `L† b_e`.
    pub fn apply_edge(&self, e: EdgeVector) -> Vec<f64> {
        self.column(e.head)
            .iter()
            .zip(self.column(e.tail))
            .map(|(a, b)| a - b)
            .collect()
    }

    /// `b_e^T L† b_e`.
    pub fn edge_resistance(&self, e: EdgeVector) -> f64 {
        self.get(e.head, e.head) + self.get(e.tail, e.tail) - 2.0 * self.get(e.head, e.tail)
    }

    /// In-place rank-1 update to the pseudoinverse of `L + w b_e b_e^T`:
    /// `L† - w (L† b)(L† b)^T / (1 + w b^T L† b)`.
    pub fn add_edge(&mut self, e: EdgeVector, w: f64) {
        let x = self.apply_edge(e);
        let scale = w / (1.0 + w * e.dot(&x));
        let n = self.dim();
        let data = self.m.as_mut_slice();
        for j in 0..n {
            let sj = scale * x[j];
            if sj == 0.0 {
                continue;
            }
            let col = &mut data[j * n..(j + 1) * n];
            for (c, xi) in col.iter_mut().zip(&x) {
                *c -= sj * xi;
            }
        }
    }

    pub fn times(&self, x: &[f64]) -> Vec<f64> {
        (&self.m * DVector::from_column_slice(x)).as_slice().to_vec()
    }
}

/// Pseudoinverse of the graph with `e` (weight `w`) added.
pub fn sherman_morrison_update(mut p: PseudoInverse, e: EdgeVector, w: f64) -> PseudoInverse {
    p.add_edge(e, w);
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::linalg::build_laplacian;

    fn pinv(n: usize, edges: &[(usize, usize)]) -> PseudoInverse {
        let g = Graph::from_edges(n, edges.iter().map(|&(u, v)| (u, v, 1.0))).unwrap();
        pseudoinverse(&build_laplacian(&g)).unwrap()
    }

    fn assert_close(p: &PseudoInverse, expect: &[&[f64]]) {
        for (i, row) in expect.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert!((p.get(i, j) - x).abs() < 1e-12, "({i},{j}): {} vs {x}", p.get(i, j));
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_close(&pinv(2, &[(0, 1)]), &[&[0.25, -0.25], &[-0.25, 0.25]]);
        let (d, o) = (2.0 / 9.0, -1.0 / 9.0);
        assert_close(&pinv(3, &[(0, 1), (1, 2), (0, 2)]), &[&[d, o, o], &[o, d, o], &[o, o, d]]);
        assert_close(
            &pinv(3, &[(0, 1), (1, 2)]),
            &[
                &[5.0 / 9.0, -1.0 / 9.0, -4.0 / 9.0],
                &[-1.0 / 9.0, 2.0 / 9.0, -1.0 / 9.0],
                &[-4.0 / 9.0, -1.0 / 9.0, 5.0 / 9.0],
            ],
        );
    }

    #[test]
    fn closing_the_path_gives_the_triangle() {
        let p = sherman_morrison_update(pinv(3, &[(0, 1), (1, 2)]), EdgeVector::new(0, 2).unwrap(), 1.0);
        let (d, o) = (2.0 / 9.0, -1.0 / 9.0);
        assert_close(&p, &[&[d, o, o], &[o, d, o], &[o, o, d]]);
    }

    #[test]
    fn path_to_cycle() {
        let p = sherman_morrison_update(
            pinv(4, &[(0, 1), (1, 2), (2, 3)]),
            EdgeVector::new(0, 3).unwrap(),
            1.0,
        );
        let fresh = pinv(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!((p.matrix() - fresh.matrix()).amax() < 1e-12);
        // C4: R(d) = d (4 - d) / 4
        for (u, v, d) in [(0, 1, 1.0), (0, 2, 2.0), (1, 3, 2.0), (0, 3, 1.0)] {
            let r = p.edge_resistance(EdgeVector::new(u, v).unwrap());
            assert!((r - d * (4.0 - d) / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn vanishing_weight_leaves_pinv_unchanged() {
        let p = pinv(4, &[(0, 1), (1, 2), (2, 3)]);
        let q = sherman_morrison_update(p.clone(), EdgeVector::new(0, 3).unwrap(), 1e-12);
        assert!((p.matrix() - q.matrix()).amax() <= 1e-10);
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(matches!(pseudoinverse(&build_laplacian(&g)), Err(Error::Disconnected)));
    }
}
