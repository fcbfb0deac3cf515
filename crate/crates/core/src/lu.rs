//! Gauss-Jordan inversion with partial pivoting.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Inverse of a square matrix. Fails with [`Error::Singular`] only when a
/// pivot is exactly zero; callers wanting a numerical-rank test should check
/// the rank first.
pub fn inverse(a: &DenseMatrix) -> Result<DenseMatrix> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let n = rows;
    let mut work: Vec<Vec<f64>> = a.iter_rows().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect();

    for k in 0..n {
        let pivot_row = (k..n)
            .max_by(|&p, &q| work[p][k].abs().total_cmp(&work[q][k].abs()))
            .expect("k < n");
        if work[pivot_row][k] == 0.0 {
            return Err(Error::Singular { rank: k, n });
        }
        work.swap(k, pivot_row);
        inv.swap(k, pivot_row);

        let pivot = work[k][k];
        for j in 0..n {
            work[k][j] /= pivot;
            inv[k][j] /= pivot;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = work[i][k];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                work[i][j] -= factor * work[k][j];
                inv[i][j] -= factor * inv[k][j];
            }
        }
    }
    Ok(DenseMatrix::from_fn_unchecked(n, n, |i, j| inv[i][j]))
}
