//! The property suite run by `ucrga check`: structural sums, permutation
//! equivariance, unit (diagonal-scaling) invariance and generalized-inverse
//! identities, all driven by one seeded RNG.

use crate::error::Result;
use crate::ginv::{
    check_gi_identities, uc_consistency_residual, uc_inverse, unitary_consistency_residual,
    Tolerances,
};
use crate::lu::inverse;
use crate::matrix::DenseMatrix;
use crate::random::{log_uniform_scaling, orthonormal, permutation, seeded};
use crate::report::{Check, PropertyReport};
use crate::rga::{
    permutation_residual, rga, rga_summary, scaling_invariance_residual, Method, RgaResult,
};
use crate::svd::pinv;

pub const PERMUTATION_TOL: f64 = 1e-9;
pub const SCALING_TOL: f64 = 1e-7;
pub const GI_TOL: f64 = 1e-8;
pub const UNITARY_TOL: f64 = 1e-8;
pub const DIAG_CONSISTENCY_TOL: f64 = 1e-7;

/// Scale factors for the randomized checks are drawn log-uniformly from this range.
pub const SCALE_RANGE: (f64, f64) = (1e-6, 1e6);

/// Computes the RGA with `method` and runs every check that applies to it.
///
/// Fails only when the RGA itself cannot be computed (for instance strict on
/// a singular matrix).
pub fn property_suite(
    g: &DenseMatrix,
    method: Method,
    tol: &Tolerances,
    seed: u64,
) -> Result<(RgaResult, PropertyReport)> {
    let result = rga(g, method, tol)?;
    let mut report = rga_summary(&result);
    let mut rng = seeded(seed);
    let (m, n) = g.shape();

    let p = permutation(m, &mut rng);
    let q = permutation(n, &mut rng);
    report.push(Check::new(
        "permutation_equivariance",
        permutation_residual(g, &p, &q, method, tol)?,
        PERMUTATION_TOL,
    ));

    let (lo, hi) = SCALE_RANGE;
    let d = log_uniform_scaling(m, lo, hi, &mut rng);
    let e = log_uniform_scaling(n, lo, hi, &mut rng);
    report.push(Check::new(
        "scaling_invariance",
        scaling_invariance_residual(g, &d, &e, method, tol)?,
        SCALING_TOL,
    ));

    let inv = match method {
        Method::Strict => inverse(g)?,
        Method::Mp => pinv(g, tol.rank_tol)?,
        Method::Uc => uc_inverse(g, tol)?.inverse,
    };
    let gi = check_gi_identities(g, &inv)?;
    report.push(Check::new("gi_identity_axa", gi.residual_axa, GI_TOL));
    report.push(Check::new("gi_identity_xax", gi.residual_xax, GI_TOL));

    match method {
        Method::Uc => {
            let d = log_uniform_scaling(m, lo, hi, &mut rng);
            let e = log_uniform_scaling(n, lo, hi, &mut rng);
            report.push(Check::new(
                "uc_diag_consistency",
                uc_consistency_residual(g, &d, &e, tol)?,
                DIAG_CONSISTENCY_TOL,
            ));
        }
        Method::Mp => {
            let u = orthonormal(m, &mut rng);
            let v = orthonormal(n, &mut rng);
            report.push(Check::new(
                "mp_unitary_consistency",
                unitary_consistency_residual(g, &u, &v, tol.rank_tol)?,
                UNITARY_TOL,
            ));
        }
        Method::Strict => {}
    }

    report.push(
        Check::new(
            "balancer_converged",
            if result.balancer_converged { 0.0 } else { 1.0 },
            0.0,
        )
        .informational(true),
    );

    Ok((result, report))
}
