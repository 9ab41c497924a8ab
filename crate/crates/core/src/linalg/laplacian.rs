use nalgebra::DMatrix;

use crate::graph::Graph;

/// Sparse weighted Laplacian `L = D - A`, stored as the diagonal plus the
/// off-diagonal pattern in CSR form (values are the positive weights `w`,
/// the entries of `L` being `-w`).
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian {
    n: usize,
    diag: Vec<f64>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    weights: Vec<f64>,
    w_max: f64,
}

pub fn build_laplacian(g: &Graph) -> Laplacian {
    let n = g.node_count();
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut cols = Vec::with_capacity(2 * g.edge_count());
    let mut weights = Vec::with_capacity(2 * g.edge_count());
    let mut diag = vec![0.0; n];
    row_ptr.push(0);
    for (v, d) in diag.iter_mut().enumerate() {
        let mut row: Vec<(usize, f64)> = g.neighbors(v).to_vec();
        row.sort_unstable_by_key(|&(u, _)| u);
        for (u, w) in row {
            cols.push(u);
            weights.push(w);
            *d += w;
        }
        row_ptr.push(cols.len());
    }
    Laplacian {
        n,
        diag,
        row_ptr,
        cols,
        weights,
        w_max: g.max_weight(),
    }
}

impl Laplacian {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    pub fn max_weight(&self) -> f64 {
        self.w_max
    }

    /// Off-diagonal neighbours of `v` with their (positive) edge weights.
    pub fn row(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[v]..self.row_ptr[v + 1];
        self.cols[r.clone()].iter().copied().zip(self.weights[r].iter().copied())
    }

    pub fn nnz_offdiag(&self) -> usize {
        self.cols.len()
    }

    /// `out = L x`.
    pub fn apply(&self, x: &[f64], out: &mut [f64]) {
        for v in 0..self.n {
            let mut s = self.diag[v] * x[v];
            for k in self.row_ptr[v]..self.row_ptr[v + 1] {
                s -= self.weights[k] * x[self.cols[k]];
            }
            out[v] = s;
        }
    }

    /// `x^T L x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut lx = vec![0.0; self.n];
        self.apply(x, &mut lx);
        x.iter().zip(&lx).map(|(a, b)| a * b).sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (u, _) in self.row(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for v in 0..self.n {
            m[(v, v)] = self.diag[v];
            for (u, w) in self.row(v) {
                m[(v, u)] = -w;
            }
        }
        m
    }
}
