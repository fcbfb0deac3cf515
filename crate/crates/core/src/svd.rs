//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations and
//! the Moore-Penrose pseudoinverse built on it.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Default relative cutoff for the numerical rank.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;

/// Columns count as orthogonal once |cos| of their angle drops below this.
const ORTHOGONALITY_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

/// Singular values at or below this are treated as exact zeros when forming
/// left singular vectors; normalizing a subnormal column loses all precision.
const NEGLIGIBLE_SV: f64 = f64::MIN_POSITIVE / f64::EPSILON;

/// `a = u · diag(sigma) · vᵀ` with `u` m×m, `v` n×n, `sigma` of length
/// min(m, n) sorted non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
}

impl SvdFactors {
    /// Shape of the factorized matrix.
    pub fn shape(&self) -> (usize, usize) {
        (self.u.rows(), self.v.rows())
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        let (m, n) = self.shape();
        DenseMatrix::from_fn_unchecked(m, n, |i, j| {
            self.sigma
                .iter()
                .enumerate()
                .map(|(k, s)| self.u.get(i, k) * s * self.v.get(j, k))
                .sum()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankInfo {
    pub numerical_rank: usize,
    pub rank_tolerance: f64,
    pub largest_sv: f64,
}

pub fn svd(a: &DenseMatrix) -> Result<SvdFactors> {
    if a.rows() >= a.cols() {
        jacobi_svd(a)
    } else {
        let f = jacobi_svd(&a.transpose())?;
        Ok(SvdFactors {
            u: f.v,
            sigma: f.sigma,
            v: f.u,
        })
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn rotate(x: &mut [f64], y: &mut [f64], c: f64, s: f64) {
    for (p, q) in x.iter_mut().zip(y.iter_mut()) {
        let (a, b) = (*p, *q);
        *p = c * a - s * b;
        *q = s * a + c * b;
    }
}

fn pair_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    debug_assert!(i < j);
    let (lo, hi) = v.split_at_mut(j);
    (&mut lo[i], &mut hi[0])
}

/// One-sided Jacobi for `m >= n`.
fn jacobi_svd(a: &DenseMatrix) -> Result<SvdFactors> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);

    // working copies stored by column
    let mut w: Vec<Vec<f64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    let mut converged = n < 2;
    let mut residual = 0.0f64;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        converged = true;
        residual = 0.0;
        for i in 0..n - 1 {
            for j in i + 1..n {
                let alpha = dot(&w[i], &w[i]);
                let beta = dot(&w[j], &w[j]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(&w[i], &w[j]);
                let cosine = gamma.abs() / (alpha.sqrt() * beta.sqrt());
                residual = residual.max(cosine);
                if cosine <= ORTHOGONALITY_TOL {
                    continue;
                }
                converged = false;

                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;

                let (wi, wj) = pair_mut(&mut w, i, j);
                rotate(wi, wj, c, s);
                let (vi, vj) = pair_mut(&mut v, i, j);
                rotate(vi, vj, c, s);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }

    let norms: Vec<f64> = w.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| norms[q].total_cmp(&norms[p]));

    let sigma: Vec<f64> = order.iter().map(|&k| norms[k]).collect();

    let mut u_cols: Vec<Option<Vec<f64>>> = order
        .iter()
        .map(|&k| {
            let s = norms[k];
            (s > NEGLIGIBLE_SV).then(|| w[k].iter().map(|x| x / s).collect())
        })
        .collect();
    u_cols.resize(m, None);
    let u_cols = complete_basis(m, u_cols);

    let u = DenseMatrix::from_fn_unchecked(m, m, |i, k| u_cols[k][i]);
    let v = DenseMatrix::from_fn_unchecked(n, n, |i, k| v[order[k]][i]);
    Ok(SvdFactors { u, sigma, v })
}

/// Fills the `None` slots with unit vectors orthogonal to everything else,
/// drawing candidates from the standard basis.
fn complete_basis(m: usize, mut cols: Vec<Option<Vec<f64>>>) -> Vec<Vec<f64>> {
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        let filled: Vec<Vec<f64>> = cols.iter().flatten().cloned().collect();
        let best = (0..m)
            .map(|k| {
                let mut e = vec![0.0; m];
                e[k] = 1.0;
                // two Gram-Schmidt passes
                for _ in 0..2 {
                    for q in &filled {
                        let proj = dot(q, &e);
                        for (x, y) in e.iter_mut().zip(q) {
                            *x -= proj * y;
                        }
                    }
                }
                let norm = dot(&e, &e).sqrt();
                (norm, e)
            })
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .expect("m > 0");
        let (norm, e) = best;
        cols[slot] = Some(e.into_iter().map(|x| x / norm).collect());
    }
    cols.into_iter().map(|c| c.expect("filled")).collect()
}

/// Counts singular values strictly above `rel_tol · σ_max · max(m, n)`.
pub fn numerical_rank(factors: &SvdFactors, rel_tol: f64) -> RankInfo {
    let (m, n) = factors.shape();
    let largest_sv = factors.sigma.first().copied().unwrap_or(0.0);
    let rank_tolerance = (rel_tol * largest_sv * m.max(n) as f64).max(f64::MIN_POSITIVE);
    let numerical_rank = factors
        .sigma
        .iter()
        .filter(|&&s| s > rank_tolerance)
        .count();
    RankInfo {
        numerical_rank,
        rank_tolerance,
        largest_sv,
    }
}

pub(crate) fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "tolerance must be positive and finite, got {rel_tol}"
        )))
    }
}

/// Moore-Penrose pseudoinverse together with the rank used to truncate it.
pub fn pinv_with_rank(a: &DenseMatrix, rel_tol: f64) -> Result<(DenseMatrix, RankInfo)> {
    check_rel_tol(rel_tol)?;
    let f = svd(a)?;
    let rank = numerical_rank(&f, rel_tol);
    let (m, n) = a.shape();
    let r = rank.numerical_rank;
    let inv_sigma: Vec<f64> = f.sigma[..r].iter().map(|s| 1.0 / s).collect();
    let x = DenseMatrix::from_fn_unchecked(n, m, |i, j| {
        inv_sigma
            .iter()
            .enumerate()
            .map(|(k, is)| f.v.get(i, k) * is * f.u.get(j, k))
            .sum()
    });
    Ok((x, rank))
}

pub fn pinv(a: &DenseMatrix, rel_tol: f64) -> Result<DenseMatrix> {
    pinv_with_rank(a, rel_tol).map(|(x, _)| x)
}
