//! Sparse `LDL^T` factorization of a grounded Laplacian.
//!
//! Deleting one row and column (the ground node) from the Laplacian of a
//! connected graph leaves a symmetric positive definite M-matrix. Its
//! factorization gives `L† z` for any zero-sum `z`: solve the grounded
//! system, put 0 at the ground, and subtract the mean.
//!
//! Ordering is plain minimum degree on the explicit elimination graph;
//! the numeric phase is the up-looking algorithm driven by the
//! elimination tree.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::Laplacian;
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct GroundedFactor {
    n: usize,
    ground: usize,
    /// `perm[k]` is the node eliminated at step `k`.
    perm: Vec<usize>,
    /// `position[node]`, `NONE` for the ground.
    position: Vec<usize>,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<f64>,
    d: Vec<f64>,
}

/// Elimination order over all nodes except `ground`.
fn minimum_degree(l: &Laplacian, ground: usize) -> Vec<usize> {
    let n = l.dim();
    let mut adj: Vec<HashSet<usize>> = (0..n)
        .map(|v| {
            if v == ground {
                HashSet::new()
            } else {
                l.row(v).map(|(u, _)| u).filter(|&u| u != ground).collect()
            }
        })
        .collect();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
        .filter(|&v| v != ground)
        .map(|v| Reverse((adj[v].len(), v)))
        .collect();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n.saturating_sub(1));
    while let Some(Reverse((deg, p))) = heap.pop() {
        if done[p] || deg != adj[p].len() {
            continue;
        }
        done[p] = true;
        order.push(p);
        let mut nbrs: Vec<usize> = adj[p].drain().collect();
        nbrs.sort_unstable();
        for &a in &nbrs {
            adj[a].remove(&p);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if adj[a].insert(b) {
                    adj[b].insert(a);
                }
            }
        }
        for &a in &nbrs {
            heap.push(Reverse((adj[a].len(), a)));
        }
    }
    order
}

impl GroundedFactor {
    /// Factor the Laplacian grounded at its highest-degree node.
    pub fn new(l: &Laplacian) -> Result<Self> {
        let n = l.dim();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let ground = (0..n)
            .max_by_key(|&v| (l.row(v).count(), Reverse(v)))
            .unwrap_or(0);
        Self::with_ground(l, ground)
    }

    pub fn with_ground(l: &Laplacian, ground: usize) -> Result<Self> {
        let n = l.dim();
        let perm = minimum_degree(l, ground);
        let m = perm.len();
        let mut position = vec![NONE; n];
        for (k, &v) in perm.iter().enumerate() {
            position[v] = k;
        }

        // upper triangle of the permuted matrix, by column
        let mut up_ptr = Vec::with_capacity(m + 1);
        let mut up_idx = Vec::new();
        let mut up_val = Vec::new();
        up_ptr.push(0);
        for (k, &v) in perm.iter().enumerate() {
            for (u, w) in l.row(v) {
                let i = position[u];
                if i != NONE && i < k {
                    up_idx.push(i);
                    up_val.push(-w);
                }
            }
            up_idx.push(k);
            up_val.push(l.diagonal()[v]);
            up_ptr.push(up_idx.len());
        }

        // symbolic: elimination tree and column counts
        let mut parent = vec![NONE; m];
        let mut flag = vec![NONE; m];
        let mut counts = vec![0usize; m];
        for k in 0..m {
            flag[k] = k;
            for &start in &up_idx[up_ptr[k]..up_ptr[k + 1]] {
                let mut i = start;
                while i < k && flag[i] != k {
                    if parent[i] == NONE {
                        parent[i] = k;
                    }
                    counts[i] += 1;
                    flag[i] = k;
                    i = parent[i];
                }
            }
        }
        let mut col_ptr = vec![0usize; m + 1];
        for k in 0..m {
            col_ptr[k + 1] = col_ptr[k] + counts[k];
        }
        let nnz = col_ptr[m];

        // numeric
        let mut row_idx = vec![0usize; nnz];
        let mut values = vec![0.0; nnz];
        let mut d = vec![0.0; m];
        let mut y = vec![0.0; m];
        let mut pattern = vec![0usize; m];
        let mut fill = vec![0usize; m];
        flag.iter_mut().for_each(|f| *f = NONE);
        for k in 0..m {
            let mut top = m;
            flag[k] = k;
            for p in up_ptr[k]..up_ptr[k + 1] {
                let mut i = up_idx[p];
                y[i] += up_val[p];
                let mut len = 0;
                while flag[i] != k {
                    pattern[len] = i;
                    len += 1;
                    flag[i] = k;
                    i = parent[i];
                }
                while len > 0 {
                    top -= 1;
                    len -= 1;
                    pattern[top] = pattern[len];
                }
            }
            d[k] = y[k];
            y[k] = 0.0;
            for &i in &pattern[top..m] {
                let yi = y[i];
                y[i] = 0.0;
                let end = col_ptr[i] + fill[i];
                for p in col_ptr[i]..end {
                    y[row_idx[p]] -= values[p] * yi;
                }
                let lki = yi / d[i];
                d[k] -= lki * yi;
                row_idx[end] = k;
                values[end] = lki;
                fill[i] += 1;
            }
            if !(d[k] > 0.0) {
                // a zero pivot in a grounded Laplacian means a component
                // that never reaches the ground
                return Err(Error::FactorizationFailed(perm[k]));
            }
        }

        Ok(Self {
            n,
            ground,
            perm,
            position,
            col_ptr,
            row_idx,
            values,
            d,
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Nonzeros of the strictly lower factor.
    pub fn factor_nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// Solve the grounded system for the non-ground entries of `rhs`,
    /// returning a full-length vector with 0 at the ground node.
    pub fn solve_grounded(&self, rhs: &[f64]) -> Vec<f64> {
        let m = self.perm.len();
        let mut x: Vec<f64> = self.perm.iter().map(|&v| rhs[v]).collect();
        for j in 0..m {
            let xj = x[j];
            if xj != 0.0 {
                for p in self.col_ptr[j]..self.col_ptr[j + 1] {
                    x[self.row_idx[p]] -= self.values[p] * xj;
                }
            }
        }
        for (xj, dj) in x.iter_mut().zip(&self.d) {
            *xj /= dj;
        }
        for j in (0..m).rev() {
            let mut s = x[j];
            for p in self.col_ptr[j]..self.col_ptr[j + 1] {
                s -= self.values[p] * x[self.row_idx[p]];
            }
            x[j] = s;
        }
        let mut out = vec![0.0; self.n];
        for (v, slot) in out.iter_mut().enumerate() {
            let k = self.position[v];
            if k != NONE {
                *slot = x[k];
            }
        }
        out
    }

    /// `L† r` for zero-sum `r` (exact up to rounding).
    pub fn apply_pinv(&self, r: &[f64]) -> Vec<f64> {
        let mut x = self.solve_grounded(r);
        let mean = x.iter().sum::<f64>() / self.n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_ba, Graph};
    use crate::linalg::{build_laplacian, pseudoinverse};

    #[test]
    fn grounded_solve_matches_dense_inverse() {
        let g = generate_ba(60, 2, 3).unwrap();
        let l = build_laplacian(&g);
        let f = GroundedFactor::new(&l).unwrap();
        let gnd = f.ground();
        let mut dense = l.to_dense().remove_row(gnd).remove_column(gnd);
        dense = dense.try_inverse().unwrap();
        let rhs: Vec<f64> = (0..60).map(|i| (i as f64 * 0.37).sin()).collect();
        let x = f.solve_grounded(&rhs);
        let reduced: Vec<f64> = (0..60).filter(|&i| i != gnd).map(|i| rhs[i]).collect();
        let expect = &dense * nalgebra::DVector::from_vec(reduced);
        let mut k = 0;
        for i in 0..60 {
            if i == gnd {
                assert_eq!(x[i], 0.0);
                continue;
            }
            assert!((x[i] - expect[k]).abs() < 1e-10);
            k += 1;
        }
    }

    #[test]
    fn apply_pinv_matches_dense_pinv() {
        let g = Graph::from_edges(
            5,
            [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 0.5), (3, 4, 1.0), (0, 4, 3.0), (1, 3, 1.0)],
        )
        .unwrap();
        let l = build_laplacian(&g);
        let p = pseudoinverse(&l).unwrap();
        let r = [1.0, -2.0, 0.5, 0.25, 0.25];
        let expect = p.times(&r);
        for ground in 0..5 {
            let f = GroundedFactor::with_ground(&l, ground).unwrap();
            let x = f.apply_pinv(&r);
            for i in 0..5 {
                assert!((x[i] - expect[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn minimum_degree_keeps_trees_fill_free() {
        // a path: eliminating from the ends creates no fill; grounding at
        // node 1 leaves 47 of the 49 edges
        let g = Graph::from_edges(50, (0..49).map(|i| (i, i + 1, 1.0))).unwrap();
        let f = GroundedFactor::new(&build_laplacian(&g)).unwrap();
        assert_eq!(f.ground(), 1);
        assert_eq!(f.factor_nnz(), 47);
    }

    #[test]
    fn disconnected_fails() {
        let g = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(GroundedFactor::new(&build_laplacian(&g)).is_err());
    }
}
