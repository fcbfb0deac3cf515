//! Relative Gain Array: `rga(G) = G ∘ (G⁻¹)ᵀ`, with the inverse replaced by
//! the Moore-Penrose or the unit-consistent generalized inverse when `G` is
//! singular or rectangular.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ginv::{uc_inverse, Tolerances, NORM_FLOOR};
use crate::lu::inverse;
use crate::matrix::{DenseMatrix, DiagScaling, Permutation};
use crate::report::{Check, PropertyReport};
use crate::svd::{check_rel_tol, numerical_rank, pinv_with_rank, svd, DEFAULT_RANK_TOL};

/// Threshold used by [`rga_summary`].
pub const SUMMARY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Strict,
    Mp,
    Uc,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Strict, Method::Mp, Method::Uc];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Strict => "strict",
            Method::Mp => "mp",
            Method::Uc => "uc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Method::Strict),
            "mp" => Ok(Method::Mp),
            "uc" => Ok(Method::Uc),
            other => Err(Error::InvalidParameter(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RgaResult {
    pub rga: DenseMatrix,
    pub method: Method,
    /// Rank of the matrix whose inverse was taken: the input for strict and
    /// mp, the balanced core for uc.
    pub numerical_rank: usize,
    pub row_sums: Vec<f64>,
    pub col_sums: Vec<f64>,
    pub element_sum: f64,
    /// Always true for strict and mp.
    pub balancer_converged: bool,
}

impl RgaResult {
    fn new(
        g: &DenseMatrix,
        inv: &DenseMatrix,
        method: Method,
        numerical_rank: usize,
        balancer_converged: bool,
    ) -> Result<Self> {
        let rga = g.hadamard(&inv.transpose())?;
        Ok(Self {
            row_sums: rga.row_sums(),
            col_sums: rga.col_sums(),
            element_sum: rga.sum(),
            rga,
            method,
            numerical_rank,
            balancer_converged,
        })
    }
}

/// RGA of a nonsingular square matrix, using Gaussian elimination.
pub fn rga_strict(g: &DenseMatrix) -> Result<RgaResult> {
    rga_strict_with_tol(g, DEFAULT_RANK_TOL)
}

/// Like [`rga_strict`], declaring `g` singular when its numerical rank under
/// `rank_tol` falls short of its order.
pub fn rga_strict_with_tol(g: &DenseMatrix, rank_tol: f64) -> Result<RgaResult> {
    check_rel_tol(rank_tol)?;
    let (rows, cols) = g.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let rank = numerical_rank(&svd(g)?, rank_tol).numerical_rank;
    if rank < rows {
        return Err(Error::Singular { rank, n: rows });
    }
    let inv = inverse(g)?;
    RgaResult::new(g, &inv, Method::Strict, rank, true)
}

pub fn rga_mp(g: &DenseMatrix, rank_tol: f64) -> Result<RgaResult> {
    let (inv, rank) = pinv_with_rank(g, rank_tol)?;
    RgaResult::new(g, &inv, Method::Mp, rank.numerical_rank, true)
}

pub fn rga_uc(g: &DenseMatrix, tol: &Tolerances) -> Result<RgaResult> {
    let uc = uc_inverse(g, tol)?;
    RgaResult::new(
        g,
        &uc.inverse,
        Method::Uc,
        uc.rank.numerical_rank,
        uc.converged(),
    )
}

pub fn rga(g: &DenseMatrix, method: Method, tol: &Tolerances) -> Result<RgaResult> {
    match method {
        Method::Strict => rga_strict_with_tol(g, tol.rank_tol),
        Method::Mp => rga_mp(g, tol.rank_tol),
        Method::Uc => rga_uc(g, tol),
    }
}

/// `‖rga(D g E) − rga(g)‖ / ‖rga(g)‖` in max-abs norm.
pub fn scaling_invariance_residual(
    g: &DenseMatrix,
    d: &DiagScaling,
    e: &DiagScaling,
    method: Method,
    tol: &Tolerances,
) -> Result<f64> {
    let scaled = g.apply_diag(d, e)?;
    let base = rga(g, method, tol)?.rga;
    let other = rga(&scaled, method, tol)?.rga;
    Ok(other.max_abs_diff(&base)? / base.max_abs().max(NORM_FLOOR))
}

/// `‖rga(P g Q) − P rga(g) Q‖ / ‖rga(g)‖` in max-abs norm.
pub fn permutation_residual(
    g: &DenseMatrix,
    p: &Permutation,
    q: &Permutation,
    method: Method,
    tol: &Tolerances,
) -> Result<f64> {
    let base = rga(g, method, tol)?.rga;
    let moved = rga(&g.permute(p, q)?, method, tol)?.rga;
    Ok(moved.max_abs_diff(&base.permute(p, q)?)? / base.max_abs().max(NORM_FLOOR))
}

/// Row/column-sum and element-sum checks.
///
/// Row and column sums only have to equal one for nonsingular square inputs;
/// otherwise those two checks are informational.
pub fn rga_summary(result: &RgaResult) -> PropertyReport {
    let (m, n) = result.rga.shape();
    let nonsingular = m == n && result.numerical_rank == n;
    let deviation = |sums: &[f64]| sums.iter().fold(0.0f64, |acc, s| acc.max((s - 1.0).abs()));

    let mut report = PropertyReport::default();
    report.push(
        Check::new(
            "row_sum_deviation",
            deviation(&result.row_sums),
            SUMMARY_TOL,
        )
        .informational(!nonsingular),
    );
    report.push(
        Check::new(
            "col_sum_deviation",
            deviation(&result.col_sums),
            SUMMARY_TOL,
        )
        .informational(!nonsingular),
    );
    report.push(Check::new(
        "element_sum_vs_rank",
        (result.element_sum - result.numerical_rank as f64).abs(),
        SUMMARY_TOL,
    ));
    report
}
