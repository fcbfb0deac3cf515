//! Diagonal scale balancing in log space.
//!
//! Factors `a = D⁻¹ · S · E⁻¹` with `D = diag(exp(u))`, `E = diag(exp(v))`,
//! where every nonzero row and column of `S` has nonzero magnitudes with
//! geometric mean one. Works on `log|a|` over the nonzero mask, alternately
//! subtracting column means and row means until the mean absolute shift of a
//! sweep drops to the tolerance. Magnitudes are only exponentiated when the
//! core is formed, so entries spanning hundreds of orders of magnitude are fine.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::svd::check_rel_tol;

pub const DEFAULT_BALANCE_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingDecomposition {
    /// `u`: log of the left scale factors.
    pub left_log: Vec<f64>,
    /// `v`: log of the right scale factors.
    pub right_log: Vec<f64>,
    /// Balanced core `S = diag(exp(u)) · a · diag(exp(v))`.
    pub core: DenseMatrix,
    pub converged: bool,
    pub iterations: usize,
    /// Sum of mean absolute column and row shifts in the last sweep.
    pub final_shift: f64,
}

impl ScalingDecomposition {
    /// `exp(u_i + v_j)`, the factor that maps `a(i, j)` onto `core(i, j)`.
    pub fn scale_factor(&self, i: usize, j: usize) -> f64 {
        (self.left_log[i] + self.right_log[j]).exp()
    }
}

fn mean_abs(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().map(|x| x.abs()).sum::<f64>() / xs.len() as f64
    }
}

pub fn balance(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<ScalingDecomposition> {
    check_rel_tol(tol)?;
    if max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be positive".into()));
    }
    let (m, n) = a.shape();

    let mask: Vec<bool> = a.data().iter().map(|&x| x != 0.0).collect();
    let mut logs: Vec<f64> = a
        .data()
        .iter()
        .map(|&x| if x != 0.0 { x.abs().ln() } else { 0.0 })
        .collect();

    let row_count: Vec<usize> = (0..m)
        .map(|i| mask[i * n..(i + 1) * n].iter().filter(|&&b| b).count())
        .collect();
    let col_count: Vec<usize> = (0..n)
        .map(|j| (0..m).filter(|&i| mask[i * n + j]).count())
        .collect();

    let mut u = vec![0.0; m];
    let mut v = vec![0.0; n];
    let mut shift = 2.0 * tol;
    let mut iterations = 0;
    let mut shifts = Vec::with_capacity(m.max(n));

    while shift > tol && iterations < max_iter {
        iterations += 1;

        shifts.clear();
        for j in (0..n).filter(|&j| col_count[j] > 0) {
            let p = (0..m).map(|i| logs[i * n + j]).sum::<f64>() / col_count[j] as f64;
            for i in (0..m).filter(|&i| mask[i * n + j]) {
                logs[i * n + j] -= p;
            }
            v[j] -= p;
            shifts.push(p);
        }
        shift = mean_abs(&shifts);

        shifts.clear();
        for i in (0..m).filter(|&i| row_count[i] > 0) {
            let row = &mut logs[i * n..(i + 1) * n];
            let p = row.iter().sum::<f64>() / row_count[i] as f64;
            for (x, _) in row
                .iter_mut()
                .zip(&mask[i * n..(i + 1) * n])
                .filter(|(_, &b)| b)
            {
                *x -= p;
            }
            u[i] -= p;
            shifts.push(p);
        }
        shift += mean_abs(&shifts);
    }

    let core = DenseMatrix::from_fn_unchecked(m, n, |i, j| {
        let k = i * n + j;
        if mask[k] {
            a.data()[k].signum() * logs[k].exp()
        } else {
            0.0
        }
    });

    Ok(ScalingDecomposition {
        left_log: u,
        right_log: v,
        core,
        converged: shift <= tol,
        iterations,
        final_shift: shift,
    })
}
