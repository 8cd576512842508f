//! The uniform walk on a finite set with marked (absorbing) targets, in the
//! canonical marked-first block form, plus its absorption theory.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Lu, Matrix};

use super::matrix::TransitionMatrix;

/// The dense solver path stops here; anything larger goes through
/// [`UniformWalkLaw`].
pub const MAX_DENSE_STATES: usize = 10_000;

/// A uniform random walk on `n` states where the `marked` subset is
/// absorbing: unmarked states jump to each of the other `n-1` states with
/// probability `1/(n-1)`, marked states stay put forever.
///
/// States are re-indexed canonically with the marked states first (ascending
/// original index), which puts the transition matrix in the block form
/// `[[I, 0], [P1, Q]]`: `Q` moves transient -> transient, `P1` moves
/// transient -> marked.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedWalk {
    n: usize,
    marked: BTreeSet<usize>,
    /// canonical index -> original index; marked states occupy `0..m`.
    ordering: Vec<usize>,
    /// Transition matrix in canonical order.
    p: TransitionMatrix,
}

impl MarkedWalk {
    /// Build the uniform walk. Needs `n >= 2` and a marked subset that is
    /// neither empty nor the whole space.
    pub fn uniform(n: usize, marked: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("walk needs at least 2 states"));
        }
        if n > MAX_DENSE_STATES {
            return Err(Error::invalid(format!(
                "n = {n} exceeds the dense-path cap of {MAX_DENSE_STATES}; use UniformWalkLaw"
            )));
        }
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        if marked.is_empty() {
            return Err(Error::invalid("marked set is empty: nothing to search"));
        }
        if let Some(&bad) = marked.iter().find(|&&s| s >= n) {
            return Err(Error::invalid(format!("marked state {bad} out of range")));
        }
        if marked.len() == n {
            return Err(Error::invalid(
                "every state is marked: nothing left to walk on",
            ));
        }

        let mut ordering: Vec<usize> = marked.iter().copied().collect();
        ordering.extend((0..n).filter(|s| !marked.contains(s)));

        let m = marked.len();
        let off = 1.0 / (n as f64 - 1.0);
        let mut mat = Matrix::zeros(n, n);
        for r in 0..n {
            if r < m {
                mat[(r, r)] = 1.0; // absorbing row
            } else {
                for c in 0..n {
                    if c != r {
                        mat[(r, c)] = off;
                    }
                }
            }
        }

        Ok(MarkedWalk {
            n,
            marked,
            ordering,
            p: TransitionMatrix::from_matrix_unchecked(mat),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marked_count(&self) -> usize {
        self.marked.len()
    }

    pub fn transient_count(&self) -> usize {
        self.n - self.marked.len()
    }

    /// Marked states in original indexing.
    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    /// canonical index -> original index.
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn canonical_of(&self, original: usize) -> usize {
        self.ordering
            .iter()
            .position(|&o| o == original)
            .expect("state out of range")
    }

    pub fn original_of(&self, canonical: usize) -> usize {
        self.ordering[canonical]
    }

    pub fn is_marked_canonical(&self, canonical: usize) -> bool {
        canonical < self.marked.len()
    }

    /// The full transition matrix in canonical (marked-first) order.
    pub fn transition(&self) -> &TransitionMatrix {
        &self.p
    }

    /// Transient-to-transient block.
    pub fn q_block(&self) -> Matrix {
        let m = self.marked_count();
        let t = self.transient_count();
        let mut q = Matrix::zeros(t, t);
        for r in 0..t {
            for c in 0..t {
                q[(r, c)] = self.p.get(m + r, m + c);
            }
        }
        q
    }

    /// Transient-to-marked block.
    pub fn p1_block(&self) -> Matrix {
        let m = self.marked_count();
        let t = self.transient_count();
        let mut p1 = Matrix::zeros(t, m);
        for r in 0..t {
            for c in 0..m {
                p1[(r, c)] = self.p.get(m + r, c);
            }
        }
        p1
    }

    /// `I - Q`, the matrix of both absorption systems.
    fn fundamental_matrix(&self) -> Matrix {
        let t = self.transient_count();
        let m = self.marked_count();
        let mut iq = Matrix::zeros(t, t);
        for r in 0..t {
            for c in 0..t {
                iq[(r, c)] = if r == c { 1.0 } else { 0.0 } - self.p.get(m + r, m + c);
            }
        }
        iq
    }

    /// Factor `I - Q` once; both absorption systems share it.
    pub fn fundamental_lu(&self) -> Result<Lu> {
        self.fundamental_matrix().lu()
    }

    /// For each transient state, the probability that the walk is absorbed
    /// at the marked state `j` (original index): the solution of
    /// `(I - Q) f = p1[:, j]`.
    ///
    /// Entry `t` of the result belongs to the transient state with canonical
    /// index `marked_count() + t`, i.e. original index `ordering()[m + t]`.
    pub fn absorption_probabilities(&self, j: usize) -> Result<Vec<f64>> {
        if !self.marked.contains(&j) {
            return Err(Error::invalid(format!("state {j} is not marked")));
        }
        let iq = self.fundamental_matrix();
        Ok(iq.lu()?.solve_refined(&iq, &self.one_step_to(j)))
    }

    /// Absorption probabilities toward every marked target, one solve per
    /// target on a shared factorization. Row `t` is the transient state,
    /// column order follows `marked()` (ascending original index).
    pub fn absorption_probabilities_all(&self) -> Result<Matrix> {
        let iq = self.fundamental_matrix();
        let lu = iq.lu()?;
        let t = self.transient_count();
        let m = self.marked_count();
        let mut out = Matrix::zeros(t, m);
        for (c, &j) in self.marked.iter().enumerate() {
            let f = lu.solve_refined(&iq, &self.one_step_to(j));
            for r in 0..t {
                out[(r, c)] = f[r];
            }
        }
        Ok(out)
    }

    /// Expected number of transitions until absorption from each transient
    /// state: the solution of `(I - Q) t = 1`.
    pub fn expected_absorption_time(&self) -> Result<Vec<f64>> {
        let ones = vec![1.0; self.transient_count()];
        let iq = self.fundamental_matrix();
        Ok(iq.lu()?.solve_refined(&iq, &ones))
    }

    /// One-step transient -> `j` probabilities (the right-hand side of the
    /// absorption system).
    fn one_step_to(&self, j: usize) -> Vec<f64> {
        let m = self.marked_count();
        let jc = self.canonical_of(j);
        (0..self.transient_count())
            .map(|r| self.p.get(m + r, jc))
            .collect()
    }
}

/// Closed-form laws of the uniform marked walk, valid at any size. These are
/// what the attack harness leans on once key spaces outgrow the dense path;
/// the dense solver must agree with them wherever both apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformWalkLaw {
    /// State count.
    pub n: u64,
    /// Marked count, `1 <= m < n`.
    pub m: u64,
}

impl UniformWalkLaw {
    pub fn new(n: u64, m: u64) -> Result<Self> {
        if n < 2 || m == 0 || m >= n {
            return Err(Error::invalid(format!(
                "uniform walk law needs n >= 2 and 1 <= m < n, got n = {n}, m = {m}"
            )));
        }
        Ok(UniformWalkLaw { n, m })
    }

    /// From any unmarked state the next step hits the marked set with this
    /// probability, identically at every step.
    pub fn per_step_hit_probability(&self) -> f64 {
        self.m as f64 / (self.n as f64 - 1.0)
    }

    /// Probability of absorbing at one specific marked target: `1/m`.
    pub fn absorption_probability(&self) -> f64 {
        1.0 / self.m as f64
    }

    /// Expected transitions until absorption from an unmarked state:
    /// `(n-1)/m`.
    pub fn expected_absorption_time(&self) -> f64 {
        (self.n as f64 - 1.0) / self.m as f64
    }

    /// Probability that a walk from an unmarked state hits the marked set
    /// within `steps` transitions (the hit time is geometric).
    pub fn hit_within(&self, steps: u64) -> f64 {
        if steps == 0 {
            return 0.0;
        }
        let q = self.per_step_hit_probability();
        if q >= 1.0 {
            return 1.0;
        }
        -f64::exp_m1(steps as f64 * f64::ln_1p(-q))
    }

    /// Smallest step budget whose within-budget hit probability reaches
    /// `confidence` (0 < confidence < 1).
    pub fn min_steps_for(&self, confidence: f64) -> Result<u64> {
        if !(0.0..1.0).contains(&confidence) {
            return Err(Error::invalid("confidence must lie in (0, 1)"));
        }
        let q = self.per_step_hit_probability();
        if q >= 1.0 {
            return Ok(1);
        }
        let steps = ((1.0 - confidence).ln() / f64::ln_1p(-q)).ceil();
        Ok((steps as u64).max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_instances() {
        assert!(MarkedWalk::uniform(1, [0]).is_err());
        assert!(MarkedWalk::uniform(5, []).is_err());
        assert!(MarkedWalk::uniform(5, [0, 1, 2, 3, 4]).is_err());
        assert!(MarkedWalk::uniform(5, [5]).is_err());
    }

    #[test]
    fn smallest_walk_has_forced_transition() {
        let w = MarkedWalk::uniform(2, [0]).unwrap();
        assert_eq!(w.transition().row(0), &[1.0, 0.0]);
        assert_eq!(w.transition().row(1), &[1.0, 0.0]);
        assert_eq!(w.q_block().as_slice(), &[0.0]);
        assert_eq!(w.p1_block().as_slice(), &[1.0]);
        let t = w.expected_absorption_time().unwrap();
        assert_eq!(t, vec![1.0]);
    }

    #[test]
    fn five_states_one_marked_matches_the_piecewise_formula() {
        let w = MarkedWalk::uniform(5, [0]).unwrap();
        let p = w.transition();
        assert_eq!(p.row(0), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        for r in 1..5 {
            for c in 0..5 {
                let expect = if r == c { 0.0 } else { 0.25 };
                assert!((p.get(r, c) - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn canonical_order_puts_marked_first() {
        let w = MarkedWalk::uniform(4, [1, 3]).unwrap();
        assert_eq!(w.ordering(), &[1, 3, 0, 2]);
        let q = w.q_block();
        let p1 = w.p1_block();
        for r in 0..2 {
            for c in 0..2 {
                let expect = if r == c { 0.0 } else { 1.0 / 3.0 };
                assert!((q[(r, c)] - expect).abs() < 1e-15);
                assert!((p1[(r, c)] - 1.0 / 3.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn absorption_splits_evenly_between_two_targets() {
        let w = MarkedWalk::uniform(4, [1, 3]).unwrap();
        for j in [1, 3] {
            let f = w.absorption_probabilities(j).unwrap();
            for v in f {
                assert!((v - 0.5).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn single_target_absorbs_with_certainty() {
        for n in [2, 3, 7, 30] {
            let w = MarkedWalk::uniform(n, [n / 2]).unwrap();
            let f = w.absorption_probabilities(n / 2).unwrap();
            for v in f {
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn expected_time_follows_the_closed_form() {
        let w = MarkedWalk::uniform(5, [2]).unwrap();
        for v in w.expected_absorption_time().unwrap() {
            assert!((v - 4.0).abs() < 1e-12);
        }
        let w = MarkedWalk::uniform(100, [0, 10, 20, 30, 40]).unwrap();
        for v in w.expected_absorption_time().unwrap() {
            assert!((v - 19.8).abs() < 1e-12);
        }
    }

    #[test]
    fn law_rejects_bad_shapes_and_matches_examples() {
        assert!(UniformWalkLaw::new(1, 1).is_err());
        assert!(UniformWalkLaw::new(4, 0).is_err());
        assert!(UniformWalkLaw::new(4, 4).is_err());
        let law = UniformWalkLaw::new(100, 5).unwrap();
        assert!((law.expected_absorption_time() - 19.8).abs() < 1e-15);
        assert!((law.absorption_probability() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn min_steps_reaches_the_requested_confidence() {
        let law = UniformWalkLaw::new(1024, 1).unwrap();
        let s = law.min_steps_for(0.9).unwrap();
        assert!(law.hit_within(s) >= 0.9);
        assert!(law.hit_within(s - 1) < 0.9);
    }
}
