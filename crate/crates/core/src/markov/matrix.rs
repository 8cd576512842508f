use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::classify::StateClassification;

/// Tolerance for "every row sums to 1" on user-supplied matrices.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// A validated row-stochastic matrix over states `0..n`.
///
/// Row `i` is the one-step distribution out of state `i`. Serializes to JSON
/// as `{ "n": n, "entries": [row-major numbers] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTransitionMatrix", into = "RawTransitionMatrix")]
pub struct TransitionMatrix {
    matrix: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawTransitionMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl TryFrom<RawTransitionMatrix> for TransitionMatrix {
    type Error = Error;
    fn try_from(raw: RawTransitionMatrix) -> Result<Self> {
        TransitionMatrix::from_entries(raw.n, raw.entries)
    }
}

impl From<TransitionMatrix> for RawTransitionMatrix {
    fn from(tm: TransitionMatrix) -> Self {
        RawTransitionMatrix {
            n: tm.n(),
            entries: tm.matrix.as_slice().to_vec(),
        }
    }
}

impl TransitionMatrix {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::invalid("transition matrix must be square"));
        }
        if matrix.rows() == 0 {
            return Err(Error::invalid("transition matrix must be non-empty"));
        }
        for r in 0..matrix.rows() {
            let row = matrix.row(r);
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::invalid(format!(
                    "row {r} has an entry outside [0, 1]"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::invalid(format!(
                    "row {r} sums to {sum}, not 1 within {ROW_SUM_TOL:e}"
                )));
            }
        }
        Ok(TransitionMatrix { matrix })
    }

    pub fn from_entries(n: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        let mut m = Matrix::zeros(n, n);
        for (idx, v) in entries.into_iter().enumerate() {
            m[(idx / n, idx % n)] = v;
        }
        TransitionMatrix::new(m)
    }

    /// Derived matrices (powers, permutations of a valid matrix) whose row
    /// sums are stochastic up to accumulated rounding, not `ROW_SUM_TOL`.
    pub(crate) fn from_matrix_unchecked(matrix: Matrix) -> Self {
        TransitionMatrix { matrix }
    }

    /// The walk of the drop-everything search: no marked states, zero
    /// diagonal, `1/(n-1)` to every other state. Irreducible for n >= 2.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("uniform walk needs at least 2 states"));
        }
        let off = 1.0 / (n as f64 - 1.0);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m[(i, j)] = off;
                }
            }
        }
        Ok(TransitionMatrix { matrix: m })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.matrix.row(i)
    }

    pub fn inner(&self) -> &Matrix {
        &self.matrix
    }

    /// `P^k`, by repeated squaring.
    pub fn power(&self, k: u64) -> TransitionMatrix {
        TransitionMatrix::from_matrix_unchecked(self.matrix.pow(k))
    }

    /// Probability of being at `j` after `steps` transitions from `i`.
    pub fn n_step_probability(&self, i: usize, j: usize, steps: u64) -> f64 {
        self.check_state(i);
        self.check_state(j);
        self.power(steps).get(i, j)
    }

    /// First-passage probabilities `f(k)` for `k = 1..=kmax`: the chance of
    /// reaching `j` from `i` for the first time in exactly `k` transitions.
    ///
    /// Computed by forward propagation with `j` treated as taboo: mass that
    /// enters `j` is recorded and removed. The partial sums are monotone and
    /// bounded by 1.
    pub fn first_passage_distribution(&self, i: usize, j: usize, kmax: usize) -> Vec<f64> {
        self.check_state(i);
        self.check_state(j);
        let n = self.n();
        let mut mass = vec![0.0f64; n];
        mass[i] = 1.0;
        let mut out = Vec::with_capacity(kmax);
        for _ in 0..kmax {
            let mut next = vec![0.0f64; n];
            for s in 0..n {
                let w = mass[s];
                if w == 0.0 {
                    continue;
                }
                for (t, &p) in self.row(s).iter().enumerate() {
                    if p > 0.0 {
                        next[t] += w * p;
                    }
                }
            }
            out.push(next[j]);
            next[j] = 0.0;
            mass = next;
        }
        out
    }

    /// The unique probability vector fixed by the chain, `pi P = pi` with
    /// `sum(pi) = 1` (row convention, so `pi` is a left eigenvector).
    ///
    /// Errors with [`Error::NonUniqueStationary`] when the chain has more
    /// than one closed recurrent class, in which case the fixed-point system
    /// has a solution space of dimension > 1.
    pub fn stationary_distribution(&self) -> Result<Vec<f64>> {
        let classes = self.classify();
        let nclasses = classes.recurrent_classes.len();
        if nclasses != 1 {
            return Err(Error::NonUniqueStationary { nclasses });
        }
        // pi (P - I) = 0 expressed on column vectors: (P - I)^T pi^T = 0.
        // The rows of (P - I)^T sum to zero, so dropping one in favor of the
        // normalization row loses nothing; the result is nonsingular exactly
        // when the stationary distribution is unique.
        let n = self.n();
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a[(j, i)] = self.get(i, j) - if i == j { 1.0 } else { 0.0 };
            }
        }
        for c in 0..n {
            a[(n - 1, c)] = 1.0;
        }
        let mut b = vec![0.0; n];
        b[n - 1] = 1.0;
        let pi = a.solve(&b)?;
        // Elimination leaves -0.0 in exactly-zero coordinates.
        Ok(pi.into_iter().map(|v| if v == 0.0 { 0.0 } else { v }).collect())
    }

    /// Partition the states into transient states and closed recurrent
    /// classes from the directed graph of nonzero transitions.
    pub fn classify(&self) -> StateClassification {
        super::classify::classify(self)
    }

    fn check_state(&self, s: usize) {
        assert!(s < self.n(), "state {s} out of range for n = {}", self.n());
    }
}
