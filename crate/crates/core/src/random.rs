//! Seeded generators for the randomized property checks: diagonal scalings,
//! permutations, orthonormal matrices and matrices of prescribed rank.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::{DenseMatrix, DiagScaling, Permutation};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive diagonal entries distributed log-uniformly on `[lo, hi]`.
pub fn log_uniform_scaling<R: Rng>(n: usize, lo: f64, hi: f64, rng: &mut R) -> DiagScaling {
    assert!(lo > 0.0 && hi >= lo);
    let (a, b) = (lo.ln(), hi.ln());
    DiagScaling::new((0..n).map(|_| rng.gen_range(a..=b).exp()).collect())
        .expect("log-uniform entries are positive")
}

pub fn permutation<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    Permutation::new(p).expect("shuffle is a bijection")
}

pub fn gaussian<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> DenseMatrix {
    DenseMatrix::from_fn_unchecked(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Orthonormal `n×n` matrix from Gram-Schmidt on a Gaussian matrix.
pub fn orthonormal<R: Rng>(n: usize, rng: &mut R) -> DenseMatrix {
    let g = gaussian(n, n, rng);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut c = g.col(j);
        for _ in 0..2 {
            for q in &basis {
                let proj: f64 = q.iter().zip(&c).map(|(a, b)| a * b).sum();
                for (x, y) in c.iter_mut().zip(q) {
                    *x -= proj * y;
                }
            }
        }
        let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        basis.push(c.into_iter().map(|x| x / norm).collect());
    }
    DenseMatrix::from_fn_unchecked(n, n, |i, j| basis[j][i])
}

/// `rows×cols` matrix of exact rank `rank` (almost surely), built as a
/// product of Gaussian factors. Rank 0 gives the zero matrix.
pub fn with_rank<R: Rng>(rows: usize, cols: usize, rank: usize, rng: &mut R) -> DenseMatrix {
    assert!(rank <= rows.min(cols));
    if rank == 0 {
        return DenseMatrix::zeros(rows, cols);
    }
    let left = gaussian(rows, rank, rng);
    let right = gaussian(rank, cols, rng);
    left.matmul(&right).expect("conformant factors")
}

/// Rank-1 2×2 matrix `x yᵀ` whose factor entries have log-uniform magnitudes
/// on `[lo, hi]` and random signs, so every entry is nonzero.
pub fn rank_one_2x2<R: Rng>(lo: f64, hi: f64, rng: &mut R) -> DenseMatrix {
    let signed = |rng: &mut R| {
        let mag = rng.gen_range(lo.ln()..=hi.ln()).exp();
        if rng.gen_bool(0.5) {
            mag
        } else {
            -mag
        }
    };
    let x = [signed(rng), signed(rng)];
    let y = [signed(rng), signed(rng)];
    DenseMatrix::from_fn_unchecked(2, 2, |i, j| x[i] * y[j])
}

/// A drawn test case: the matrix and the rank it was built with.
#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub matrix: DenseMatrix,
    pub rank: usize,
}

impl SuiteCase {
    pub fn is_nonsingular_square(&self) -> bool {
        self.matrix.is_square() && self.rank == self.matrix.rows()
    }

    pub fn is_rank_deficient(&self) -> bool {
        self.rank < self.matrix.rows().min(self.matrix.cols())
    }
}

/// Mixed suite of shapes from 2×2 to 6×8 with ranks from 1 to full.
///
/// Every fourth case is square and nonsingular, every fourth (offset by one)
/// is square of random rank, the rest have random shape and rank.
pub fn suite(count: usize, seed: u64) -> Vec<SuiteCase> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|k| {
            let (rows, cols, rank) = match k % 4 {
                0 => {
                    let n = rng.gen_range(2..=6);
                    (n, n, n)
                }
                1 => {
                    let n = rng.gen_range(2..=6);
                    (n, n, rng.gen_range(1..=n))
                }
                _ => {
                    let m = rng.gen_range(2..=6);
                    let n = rng.gen_range(2..=8);
                    (m, n, rng.gen_range(1..=m.min(n)))
                }
            };
            SuiteCase {
                matrix: with_rank(rows, cols, rank, &mut rng),
                rank,
            }
        })
        .collect()
}
