//! The unit-consistent generalized inverse and residual checks for
//! generalized-inverse identities.
//!
//! With `a = D⁻¹ S E⁻¹` from [`balance`], the UC inverse is `E · S⁺ · D`.
//! Because the balanced core `S` does not change when `a` is rescaled by
//! nonsingular diagonal matrices, `(D₀ a E₀)^U = E₀⁻¹ a^U D₀⁻¹`.

use crate::balance::{balance, ScalingDecomposition, DEFAULT_BALANCE_TOL, DEFAULT_MAX_ITER};
use crate::error::{dim_err, Result};
use crate::matrix::{DenseMatrix, DiagScaling};
use crate::svd::{pinv, pinv_with_rank, RankInfo, DEFAULT_RANK_TOL};

/// Guard against dividing by a zero norm in relative residuals.
pub const NORM_FLOOR: f64 = 1e-300;

/// Numerical knobs shared by the generalized inverses and the RGA variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative singular-value cutoff for pseudoinverses and rank.
    pub rank_tol: f64,
    /// Stopping threshold on the balancer's per-sweep mean shift.
    pub balance_tol: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_tol: DEFAULT_RANK_TOL,
            balance_tol: DEFAULT_BALANCE_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UcInverse {
    pub inverse: DenseMatrix,
    pub scaling: ScalingDecomposition,
    /// Rank of the balanced core as used by its pseudoinverse.
    pub rank: RankInfo,
}

impl UcInverse {
    pub fn converged(&self) -> bool {
        self.scaling.converged
    }
}

/// Unit-consistent generalized inverse (n×m for an m×n input).
///
/// A balancer that hits its iteration cap still produces an inverse; check
/// [`UcInverse::converged`].
pub fn uc_inverse(a: &DenseMatrix, tol: &Tolerances) -> Result<UcInverse> {
    let scaling = balance(a, tol.balance_tol, tol.max_iter)?;
    let (core_pinv, rank) = pinv_with_rank(&scaling.core, tol.rank_tol)?;
    let (m, n) = a.shape();
    let inverse = DenseMatrix::from_fn_unchecked(n, m, |j, i| {
        core_pinv.get(j, i) * scaling.scale_factor(i, j)
    });
    Ok(UcInverse {
        inverse,
        scaling,
        rank,
    })
}

/// Relative residuals of `a g a = a` and `g a g = g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GiResiduals {
    pub residual_axa: f64,
    pub residual_xax: f64,
}

impl GiResiduals {
    pub fn within(&self, tol: f64) -> bool {
        self.residual_axa <= tol && self.residual_xax <= tol
    }
}

pub fn check_gi_identities(a: &DenseMatrix, g: &DenseMatrix) -> Result<GiResiduals> {
    if g.shape() != (a.cols(), a.rows()) {
        return Err(dim_err(
            "check_gi_identities",
            format!(
                "inverse candidate is {:?}, expected {:?}",
                g.shape(),
                (a.cols(), a.rows())
            ),
        ));
    }
    let ag = a.matmul(g)?;
    let ga = g.matmul(a)?;
    let axa = ag.matmul(a)?.max_abs_diff(a)?;
    let xax = ga.matmul(g)?.max_abs_diff(g)?;
    Ok(GiResiduals {
        residual_axa: axa / a.max_abs().max(NORM_FLOOR),
        residual_xax: xax / g.max_abs().max(NORM_FLOOR),
    })
}

/// `‖E · inv(D a E) · D − inv(a)‖ / ‖inv(a)‖` in max-abs norm, for any
/// generalized inverse `inv`.
pub fn diag_consistency_residual(
    a: &DenseMatrix,
    d: &DiagScaling,
    e: &DiagScaling,
    inv: impl Fn(&DenseMatrix) -> Result<DenseMatrix>,
) -> Result<f64> {
    let scaled = a.apply_diag(d, e)?;
    let base = inv(a)?;
    let back = inv(&scaled)?.apply_diag(e, d)?;
    Ok(back.max_abs_diff(&base)? / base.max_abs().max(NORM_FLOOR))
}

pub fn uc_consistency_residual(
    a: &DenseMatrix,
    d: &DiagScaling,
    e: &DiagScaling,
    tol: &Tolerances,
) -> Result<f64> {
    diag_consistency_residual(a, d, e, |x| uc_inverse(x, tol).map(|r| r.inverse))
}

/// The same diagonal-consistency test applied to the Moore-Penrose inverse.
pub fn mp_consistency_residual(
    a: &DenseMatrix,
    d: &DiagScaling,
    e: &DiagScaling,
    rank_tol: f64,
) -> Result<f64> {
    diag_consistency_residual(a, d, e, |x| pinv(x, rank_tol))
}

/// `‖(U a V)⁺ − Vᵀ a⁺ Uᵀ‖ / ‖a⁺‖` for orthonormal `u` (m×m) and `v` (n×n).
pub fn unitary_consistency_residual(
    a: &DenseMatrix,
    u: &DenseMatrix,
    v: &DenseMatrix,
    rank_tol: f64,
) -> Result<f64> {
    let rotated = u.matmul(a)?.matmul(v)?;
    let base = pinv(a, rank_tol)?;
    let expected = v.transpose().matmul(&base)?.matmul(&u.transpose())?;
    let got = pinv(&rotated, rank_tol)?;
    Ok(got.max_abs_diff(&expected)? / base.max_abs().max(NORM_FLOOR))
}
