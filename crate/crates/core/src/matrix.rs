//! Dense row-major real matrices and the diagonal/permutation operands that act on them.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{dim_err, Error, Result};

/// A dense real matrix stored in row-major order.
///
/// Public constructors reject NaN and infinite entries. Both dimensions are
/// at least one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Wire form `{"rows": m, "cols": n, "data": [...]}`.
#[derive(Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl TryFrom<RawMatrix> for DenseMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        DenseMatrix::new(raw.rows, raw.cols, raw.data)
    }
}

impl From<DenseMatrix> for RawMatrix {
    fn from(m: DenseMatrix) -> Self {
        RawMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data,
        }
    }
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        let expected = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::InvalidMatrix("dimensions overflow".into()))?;
        if data.len() != expected {
            return Err(Error::InvalidMatrix(format!(
                "{rows}x{cols} matrix needs {expected} entries, got {}",
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite {
                row: k / cols + 1,
                col: k % cols + 1,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::EmptyInput);
        }
        let n = rows[0].as_ref().len();
        let mut data = Vec::with_capacity(m * n);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != n {
                return Err(Error::RaggedRow {
                    line: i + 1,
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(m, n, data)
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let m = Self::from_fn_unchecked(rows, cols, f);
        Self::new(m.rows, m.cols, m.data)
    }

    /// Kernel-internal constructor; skips the finiteness scan.
    pub(crate) fn from_fn_unchecked(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        assert!(value.is_finite());
        let mut m = Self::zeros(rows, cols);
        m.data.fill(value);
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.cols)
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.iter_rows().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.cols];
        for r in self.iter_rows() {
            for (s, x) in sums.iter_mut().zip(r) {
                *s += x;
            }
        }
        sums
    }

    pub fn scale(&self, factor: f64) -> DenseMatrix {
        self.map(|x| x * factor)
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &DenseMatrix,
        op: &'static str,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<DenseMatrix> {
        if self.shape() != other.shape() {
            return Err(dim_err(
                op,
                format!("{:?} vs {:?}", self.shape(), other.shape()),
            ));
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Elementwise (Hadamard) product.
    pub fn hadamard(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, "hadamard", |a, b| a * b)
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(dim_err(
                "matmul",
                format!("{:?} x {:?}", self.shape(), other.shape()),
            ));
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            let out_row = &mut out[i * n..(i + 1) * n];
            for p in 0..k {
                let a = self.data[i * k + p];
                if a == 0.0 {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(other.row(p)) {
                    *o += a * b;
                }
            }
        }
        Ok(DenseMatrix {
            rows: m,
            cols: n,
            data: out,
        })
    }

    pub fn transpose(&self) -> DenseMatrix {
        DenseMatrix::from_fn_unchecked(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hstack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows {
            return Err(dim_err(
                "hstack",
                format!("{} rows vs {} rows", self.rows, other.rows),
            ));
        }
        let c = self.cols;
        Ok(DenseMatrix::from_fn_unchecked(
            self.rows,
            c + other.cols,
            |i, j| {
                if j < c {
                    self.get(i, j)
                } else {
                    other.get(i, j - c)
                }
            },
        ))
    }

    /// Returns `diag(left) · self · diag(right)`.
    pub fn apply_diag(&self, left: &DiagScaling, right: &DiagScaling) -> Result<DenseMatrix> {
        if left.len() != self.rows || right.len() != self.cols {
            return Err(dim_err(
                "apply_diag",
                format!(
                    "scalings of length {} and {} for a {}x{} matrix",
                    left.len(),
                    right.len(),
                    self.rows,
                    self.cols
                ),
            ));
        }
        Ok(DenseMatrix::from_fn_unchecked(
            self.rows,
            self.cols,
            |i, j| left.0[i] * self.get(i, j) * right.0[j],
        ))
    }

    /// Returns the matrix whose entry `(i, j)` is `self(rows(i), cols(j))`.
    pub fn permute(&self, rows: &Permutation, cols: &Permutation) -> Result<DenseMatrix> {
        if rows.len() != self.rows || cols.len() != self.cols {
            return Err(dim_err(
                "permute",
                format!(
                    "permutations of length {} and {} for a {}x{} matrix",
                    rows.len(),
                    cols.len(),
                    self.rows,
                    self.cols
                ),
            ));
        }
        Ok(DenseMatrix::from_fn_unchecked(
            self.rows,
            self.cols,
            |i, j| self.get(rows.0[i], cols.0[j]),
        ))
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.iter_rows() {
            let line: Vec<String> = r.iter().map(|x| format!("{x}")).collect();
            writeln!(f, "{}", line.join(","))?;
        }
        Ok(())
    }
}

/// Free-function form of [`DenseMatrix::hadamard`].
pub fn hadamard(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.hadamard(b)
}

pub fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.matmul(b)
}

pub fn transpose(a: &DenseMatrix) -> DenseMatrix {
    a.transpose()
}

pub fn apply_diag(left: &DiagScaling, a: &DenseMatrix, right: &DiagScaling) -> Result<DenseMatrix> {
    a.apply_diag(left, right)
}

pub fn permute(a: &DenseMatrix, rows: &Permutation, cols: &Permutation) -> Result<DenseMatrix> {
    a.permute(rows, cols)
}

/// Nonsingular diagonal scaling, stored as its diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagScaling(Vec<f64>);

impl DiagScaling {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty diagonal scaling".into()));
        }
        if let Some(k) = entries.iter().position(|x| !x.is_finite() || *x == 0.0) {
            return Err(Error::InvalidParameter(format!(
                "diagonal scaling entry {k} is {} (must be finite and nonzero)",
                entries[k]
            )));
        }
        Ok(Self(entries))
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn inverse(&self) -> DiagScaling {
        DiagScaling(self.0.iter().map(|x| 1.0 / x).collect())
    }

    /// Product of two diagonal scalings of the same length.
    pub fn compose(&self, other: &DiagScaling) -> Result<DiagScaling> {
        if self.len() != other.len() {
            return Err(dim_err(
                "compose",
                format!("{} vs {}", self.len(), other.len()),
            ));
        }
        DiagScaling::new(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }
}

/// A bijection on `0..n`, used to reorder rows or columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &k in &mapping {
            if k >= n || seen[k] {
                return Err(Error::InvalidParameter(format!(
                    "{mapping:?} is not a permutation of 0..{n}"
                )));
            }
            seen[k] = true;
        }
        Ok(Self(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &k) in self.0.iter().enumerate() {
            inv[k] = i;
        }
        Permutation(inv)
    }
}
