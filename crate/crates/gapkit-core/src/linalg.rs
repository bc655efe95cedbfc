//! Small dense linear algebra: LU with partial pivoting.
//!
//! Every system in this crate is at most `(2n+2) × (2n+2)` for `n`
//! gaps, so a plain partial-pivot elimination is adequate and keeps the
//! core free of external solver dependencies.

use crate::math::FloatExt;
use crate::Error;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Dense row-major matrix.
#[derive(Debug, Clone)]
pub struct Matrix {
    /// Row count.
    pub rows: usize,
    /// Column count.
    pub cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Element accessor.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    /// Element mutator.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    /// Matrix–vector product.
    #[allow(clippy::needless_range_loop)] // indices mirror the matrix notation
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        y
    }

    /// Solves `A x = b` by LU with partial pivoting.
    ///
    /// Returns the solution together with a pivot-ratio conditioning
    /// diagnostic (max |pivot| / min |pivot|).
    pub fn solve(&self, b: &[f64]) -> crate::Result<Solution> {
        assert_eq!(self.rows, self.cols, "solve requires a square matrix");
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut x: Vec<f64> = b.to_vec();
        let mut max_piv = 0.0f64;
        let mut min_piv = f64::INFINITY;
        for col in 0..n {
            // Partial pivot.
            let mut best = col;
            let mut best_val = a[col * n + col].abs();
            for r in col + 1..n {
                let v = a[r * n + col].abs();
                if v > best_val {
                    best = r;
                    best_val = v;
                }
            }
            if best_val == 0.0 || !best_val.is_finite() {
                return Err(Error::SingularSystem(format!(
                    "zero or non-finite pivot in column {col}"
                )));
            }
            if best != col {
                for j in 0..n {
                    a.swap(col * n + j, best * n + j);
                }
                x.swap(col, best);
            }
            let piv = a[col * n + col];
            max_piv = max_piv.maxf(piv.abs());
            min_piv = min_piv.minf(piv.abs());
            for r in col + 1..n {
                let f = a[r * n + col] / piv;
                if f == 0.0 {
                    continue;
                }
                a[r * n + col] = 0.0;
                for j in col + 1..n {
                    a[r * n + j] -= f * a[col * n + j];
                }
                x[r] -= f * x[col];
            }
        }
        // Back substitution.
        for col in (0..n).rev() {
            let mut acc = x[col];
            for j in col + 1..n {
                acc -= a[col * n + j] * x[j];
            }
            x[col] = acc / a[col * n + col];
        }
        Ok(Solution {
            x,
            pivot_ratio: max_piv / min_piv,
        })
    }
}

/// Result of a linear solve.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Solution vector.
    pub x: Vec<f64>,
    /// Conditioning diagnostic: max |pivot| / min |pivot|.
    pub pivot_ratio: f64,
}
