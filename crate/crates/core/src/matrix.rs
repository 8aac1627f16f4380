//! Minimal dense symmetric-matrix support for the oracle and test paths.
//!
//! The serving path never materializes a full kernel; everything here exists
//! for small offline runs, the direct-determinant oracle, and tests.

use crate::error::{Error, Result};

/// Tolerance below which a Cholesky pivot is treated as evidence of an
/// indefinite (non-PSD) matrix rather than harmless rounding.
pub const PSD_PIVOT_TOL: f64 = 1e-8;

/// Dense row-major square matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMat {
    n: usize,
    data: Vec<f64>,
}

impl SquareMat {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from a row-major buffer; `data.len()` must equal `n * n`.
    pub fn from_rows(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Argument(format!(
                "square matrix of order {n} needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Principal submatrix over `idx` (rows and columns, in the given order).
    pub fn principal_submatrix(&self, idx: &[usize]) -> SquareMat {
        let k = idx.len();
        let mut out = SquareMat::zeros(k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.at(i, j));
            }
        }
        out
    }
}

/// Log-determinant of a symmetric PSD matrix via Cholesky.
///
/// Returns `-inf` for singular-but-PSD inputs (a pivot collapses to zero
/// within rounding). A pivot below `-PSD_PIVOT_TOL` means the matrix is not
/// PSD and yields a numeric error.
pub fn cholesky_log_det(m: &SquareMat) -> Result<f64> {
    let n = m.n();
    if n == 0 {
        return Ok(0.0); // det of the empty matrix is 1
    }
    let mut l = m.clone();
    let mut log_det = 0.0;
    for j in 0..n {
        let mut d = l.at(j, j);
        for t in 0..j {
            let v = l.at(j, t);
            d -= v * v;
        }
        if d < -PSD_PIVOT_TOL {
            return Err(Error::Numeric(format!(
                "matrix is not positive semi-definite: pivot {d:.3e} at index {j}"
            )));
        }
        if d <= 0.0 {
            // PSD but rank-deficient: determinant is zero.
            return Ok(f64::NEG_INFINITY);
        }
        let root = d.sqrt();
        l.set(j, j, root);
        log_det += root.ln();
        for i in (j + 1)..n {
            let mut v = l.at(i, j);
            for t in 0..j {
                v -= l.at(i, t) * l.at(j, t);
            }
            l.set(i, j, v / root);
        }
    }
    Ok(2.0 * log_det)
}

/// Determinant of a symmetric PSD matrix (zero when rank-deficient).
pub fn psd_det(m: &SquareMat) -> Result<f64> {
    Ok(cholesky_log_det(m)?.exp())
}
