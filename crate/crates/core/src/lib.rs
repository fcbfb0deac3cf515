//! Relative Gain Array for square, singular and rectangular real matrices.
//!
//! Three variants are provided: the strict RGA `G ∘ (G⁻¹)ᵀ` for nonsingular
//! `G`, the Moore-Penrose RGA `G ∘ (G⁺)ᵀ`, and the unit-consistent RGA
//! `G ∘ (G^U)ᵀ` built on a diagonally balanced core. Only the last one is
//! unchanged when the rows or columns of `G` are rescaled (a change of units
//! on the outputs or inputs) for every `G`.
//!
//! ```
//! use ucrga::{rga_mp, rga_uc, DenseMatrix, Tolerances};
//!
//! let g = DenseMatrix::from_rows(&[[4.0, 2.0, 2.0], [2.0, 1.0, 1.0], [2.0, 1.0, 1.0]]).unwrap();
//! let uc = rga_uc(&g, &Tolerances::default()).unwrap();
//! assert!((uc.rga.get(0, 0) - 1.0 / 9.0).abs() < 1e-12);
//! let mp = rga_mp(&g, 1e-12).unwrap();
//! assert!((mp.rga.get(0, 0) - 4.0 / 9.0).abs() < 1e-12);
//! ```

pub mod balance;
pub mod checks;
pub mod cli;
pub mod error;
pub mod ginv;
pub mod io;
pub mod lu;
pub mod matrix;
pub mod random;
pub mod report;
pub mod rga;
pub mod svd;

pub use balance::{balance, ScalingDecomposition, DEFAULT_BALANCE_TOL, DEFAULT_MAX_ITER};
pub use error::{Error, Result};
pub use ginv::{
    check_gi_identities, mp_consistency_residual, uc_consistency_residual, uc_inverse,
    unitary_consistency_residual, GiResiduals, Tolerances, UcInverse,
};
pub use io::{parse_csv, parse_json, to_csv, to_json};
pub use matrix::{DenseMatrix, DiagScaling, Permutation};
pub use report::{Check, PropertyReport};
pub use rga::{
    permutation_residual, rga, rga_mp, rga_strict, rga_strict_with_tol, rga_summary, rga_uc,
    scaling_invariance_residual, Method, RgaResult,
};
pub use svd::{numerical_rank, pinv, svd, RankInfo, SvdFactors, DEFAULT_RANK_TOL};
