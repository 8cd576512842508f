//! Dense double-precision matrices and an LU solver with partial pivoting.
//!
//! Everything here is desk-scale by choice: row-major `Vec<f64>` storage and
//! O(n^3) elimination, with state counts capped by the callers at 1e4. The
//! solver rejects pivots below [`PIVOT_RTOL`] of the pivot row's magnitude so
//! that a singular system (e.g. a chain that is not absorbing) surfaces as an
//! error instead of garbage.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative pivot tolerance: pivots smaller than this fraction of the pivot
/// row's largest original entry are treated as singular.
pub const PIVOT_RTOL: f64 = 1e-12;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    /// Row-major entries, `data[r * cols + c]`.
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::invalid("matrix must have at least one row"));
        }
        let ncols = rows[0].len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::invalid("ragged rows"));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major view of all entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let out_row = out.row_mut(i);
                for (o, &b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self^k` by repeated squaring; `self` must be square.
    pub fn pow(&self, mut k: u64) -> Matrix {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut result = Matrix::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.matmul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// LU factorization with partial pivoting. Fails on pivots below
    /// [`PIVOT_RTOL`] relative to the pivot row's largest original entry.
    pub fn lu(&self) -> Result<Lu> {
        assert_eq!(self.rows, self.cols, "lu needs a square matrix");
        let n = self.rows;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        // Per-row magnitude of the original matrix, for the relative test.
        let scale: Vec<f64> = (0..n)
            .map(|r| self.row(r).iter().fold(0.0f64, |m, v| m.max(v.abs())))
            .collect();

        let mut pivot_min = f64::INFINITY;
        let mut pivot_max = 0.0f64;

        for k in 0..n {
            let (pr, pv) = (k..n)
                .map(|r| (r, lu[(r, k)].abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty column");
            let row_scale = scale[perm[pr]].max(f64::MIN_POSITIVE);
            if pv < PIVOT_RTOL * row_scale {
                return Err(Error::NumericalFailure(format!(
                    "singular system: pivot {pv:.3e} below {PIVOT_RTOL:.0e} of row magnitude {row_scale:.3e} at column {k}"
                )));
            }
            if pr != k {
                perm.swap(pr, k);
                for c in 0..n {
                    let tmp = lu[(k, c)];
                    lu[(k, c)] = lu[(pr, c)];
                    lu[(pr, c)] = tmp;
                }
            }
            let pivot = lu[(k, k)];
            pivot_min = pivot_min.min(pivot.abs());
            pivot_max = pivot_max.max(pivot.abs());
            for r in k + 1..n {
                let f = lu[(r, k)] / pivot;
                lu[(r, k)] = f;
                if f != 0.0 {
                    for c in k + 1..n {
                        let v = lu[(k, c)];
                        lu[(r, c)] -= f * v;
                    }
                }
            }
        }

        Ok(Lu {
            lu,
            perm,
            pivot_min,
            pivot_max,
        })
    }

    /// Convenience: factor once and solve a single right-hand side.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        Ok(self.lu()?.solve(b))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.cols + c]
    }
}

/// Factored form of a square matrix, reusable across right-hand sides.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    pivot_min: f64,
    pivot_max: f64,
}

impl Lu {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        assert_eq!(b.len(), n);
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut acc = y[i];
            for k in 0..i {
                acc -= self.lu[(i, k)] * y[k];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for k in i + 1..n {
                acc -= self.lu[(i, k)] * y[k];
            }
            y[i] = acc / self.lu[(i, i)];
        }
        y
    }

    /// Cheap conditioning proxy: ratio of the largest to smallest pivot.
    /// Finite whenever factorization succeeded.
    pub fn pivot_ratio(&self) -> f64 {
        self.pivot_max / self.pivot_min
    }

    /// Solve with two rounds of iterative refinement against the original
    /// matrix `a`. Brings the forward error near machine level for the
    /// mildly ill-conditioned systems the walk solvers produce.
    pub fn solve_refined(&self, a: &Matrix, b: &[f64]) -> Vec<f64> {
        let mut x = self.solve(b);
        for _ in 0..2 {
            let r = compensated_residual(a, &x, b);
            let d = self.solve(&r);
            for (xi, di) in x.iter_mut().zip(&d) {
                *xi += di;
            }
        }
        x
    }
}

/// `b - A x` with Neumaier-compensated row sums, so refinement corrects
/// errors smaller than the naive dot products could see.
fn compensated_residual(a: &Matrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.rows();
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut sum = b[i];
        let mut comp = 0.0f64;
        for (j, &aij) in a.row(i).iter().enumerate() {
            let term = -aij * x[j];
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        }
        r.push(sum + comp);
    }
    r
}

/// `max_i |a[i] - b[i]|`.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}
