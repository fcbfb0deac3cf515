//! Test-only oracles and fixtures, independent of the library's kernels.
#![allow(dead_code)]

use serde::Deserialize;
use ucrga::DenseMatrix;

#[derive(Deserialize)]
pub struct OracleCase {
    pub input: DenseMatrix,
    pub expected: DenseMatrix,
}

#[derive(Deserialize)]
struct OracleFile {
    cases: Vec<OracleCase>,
}

/// UC-RGA values from a numpy transliteration of the original Octave
/// routine (see `data/uc_oracle.py`), frozen with their inputs: the
/// 200-case random suite followed by the worked examples.
pub fn uc_oracle_cases() -> Vec<OracleCase> {
    let file: OracleFile = serde_json::from_str(include_str!("../data/uc_oracle.json")).unwrap();
    file.cases
}

pub fn mat<R: AsRef<[f64]>>(rows: &[R]) -> DenseMatrix {
    DenseMatrix::from_rows(rows).unwrap()
}

pub fn fixture_a() -> DenseMatrix {
    mat(&[[7.0, 4.0, 8.0], [7.0, 2.0, 5.0], [3.0, 8.0, 8.0]])
}

pub fn fixture_b() -> DenseMatrix {
    mat(&[[21.0, 16.0, 16.0], [21.0, 8.0, 10.0], [9.0, 32.0, 16.0]])
}

pub fn fixture_m() -> DenseMatrix {
    fixture_a().hstack(&fixture_b()).unwrap()
}

/// RGA of A (and B) as printed, two decimals.
pub fn printed_rga_a() -> DenseMatrix {
    mat(&[
        [-2.47, -2.41, 5.88],
        [3.29, 0.94, -3.24],
        [0.18, 2.47, -1.65],
    ])
}

/// Printed MP-RGA of [A B], before the leading factor 1/2.
pub fn printed_mp_rga_m() -> DenseMatrix {
    mat(&[
        [-4.47, -4.54, 9.41, -0.49, -0.28, 2.35],
        [5.93, 1.77, -5.18, 0.66, 0.11, -1.29],
        [0.32, 4.65, -2.64, 0.04, 0.29, -0.66],
    ])
}

/// Full-precision strict RGA of A, frozen from an independent numpy run of
/// `A .* inv(A)'`; every entry is a multiple of 1/68 (det A = 68).
pub fn exact_rga_a() -> DenseMatrix {
    mat(&[
        [-168.0, -164.0, 400.0],
        [224.0, 64.0, -220.0],
        [12.0, 168.0, -112.0],
    ])
    .scale(1.0 / 68.0)
}

/// Full-precision MP-RGA of [A B], frozen from numpy (`M .* pinv(M)'`).
pub fn exact_mp_rga_m() -> DenseMatrix {
    mat(&[
        [
            -0.4941176470588351,
            -0.28373702422145397,
            2.3529411764705883,
            -4.447058823529402,
            -4.539792387543253,
            9.411764705882357,
        ],
        [
            0.6588235294117749,
            0.11072664359861613,
            -1.2941176470588225,
            5.92941176470587,
            1.7716262975778536,
            -5.176470588235293,
        ],
        [
            0.03529411764706034,
            0.29065743944636724,
            -0.6588235294117646,
            0.3176470588235283,
            4.650519031141869,
            -2.6352941176470597,
        ],
    ])
    .scale(0.5)
}
