//! Statevector Grover search over `0..n` with a predicate oracle.
//!
//! One iteration flips the phase of every marked amplitude (one oracle
//! query) and then inverts all amplitudes about their mean. From the uniform
//! start the success probability after `k` iterations is
//! `sin^2((2k+1) asin(sqrt(m/n)))`, which the statevector must track to
//! within solver rounding.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::stream_rng;

/// Dense statevectors stop here (16 bytes per amplitude); use
/// [`closed_form_success`] beyond it.
pub const MAX_DENSE_SEARCH_SPACE: usize = 1 << 24;

/// The search criterion: which of `0..n` are marked.
#[derive(Clone)]
pub struct OracleSpec {
    marked: Vec<bool>,
    marked_count: usize,
}

impl std::fmt::Debug for OracleSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OracleSpec")
            .field("n", &self.marked.len())
            .field("marked_count", &self.marked_count)
            .finish()
    }
}

impl OracleSpec {
    /// Evaluate `predicate` over the whole space once. Requires at least one
    /// marked and at least one unmarked element.
    pub fn from_predicate(n: usize, predicate: impl Fn(usize) -> bool) -> Result<Self> {
        let marked: Vec<bool> = (0..n).map(predicate).collect();
        let marked_count = marked.iter().filter(|&&b| b).count();
        if marked_count == 0 {
            return Err(Error::invalid("oracle marks nothing"));
        }
        if marked_count == n {
            return Err(Error::invalid("oracle marks everything"));
        }
        Ok(OracleSpec {
            marked,
            marked_count,
        })
    }

    pub fn from_marked(n: usize, marked_indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut marked = vec![false; n];
        for i in marked_indices {
            if i >= n {
                return Err(Error::invalid(format!("marked index {i} out of range")));
            }
            marked[i] = true;
        }
        let marked_count = marked.iter().filter(|&&b| b).count();
        if marked_count == 0 {
            return Err(Error::invalid("oracle marks nothing"));
        }
        if marked_count == n {
            return Err(Error::invalid("oracle marks everything"));
        }
        Ok(OracleSpec {
            marked,
            marked_count,
        })
    }

    pub fn n(&self) -> usize {
        self.marked.len()
    }

    pub fn marked_count(&self) -> usize {
        self.marked_count
    }

    pub fn is_marked(&self, x: usize) -> bool {
        self.marked[x]
    }
}

/// Statevector over the search space plus an oracle-query counter.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverState {
    amplitudes: Vec<Complex64>,
    queries_used: u64,
}

impl GroverState {
    /// The uniform superposition: every amplitude `1/sqrt(n)`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("search space needs at least 2 elements"));
        }
        if n > MAX_DENSE_SEARCH_SPACE {
            return Err(Error::invalid(format!(
                "n = {n} exceeds the dense statevector cap of {MAX_DENSE_SEARCH_SPACE}"
            )));
        }
        let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        Ok(GroverState {
            amplitudes: vec![a; n],
            queries_used: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn queries_used(&self) -> u64 {
        self.queries_used
    }

    pub fn amplitude(&self, x: usize) -> Complex64 {
        self.amplitudes[x]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `k` rounds of (phase-flip marked, invert about the mean). Each round
    /// costs one oracle query.
    pub fn iterate(&self, oracle: &OracleSpec, k: u64) -> GroverState {
        assert_eq!(oracle.n(), self.n(), "oracle size mismatch");
        let mut amps = self.amplitudes.clone();
        for _ in 0..k {
            for (a, &m) in amps.iter_mut().zip(&oracle.marked) {
                if m {
                    *a = -*a;
                }
            }
            let mean = amps.iter().sum::<Complex64>() / self.n() as f64;
            for a in amps.iter_mut() {
                *a = 2.0 * mean - *a;
            }
        }
        GroverState {
            amplitudes: amps,
            queries_used: self.queries_used + k,
        }
    }

    /// Probability that a measurement lands on a marked element.
    pub fn success_probability(&self, oracle: &OracleSpec) -> f64 {
        assert_eq!(oracle.n(), self.n(), "oracle size mismatch");
        self.amplitudes
            .iter()
            .zip(&oracle.marked)
            .filter(|(_, &m)| m)
            .map(|(a, _)| a.norm_sqr())
            .sum()
    }

    /// Measure once: index `x` with probability `|a_x|^2`, by inverse CDF on
    /// a dedicated stream of `seed`.
    pub fn sample_measurement(&self, seed: u64) -> usize {
        self.sample_measurement_with(&mut stream_rng(seed, 0))
    }

    /// Measure using a caller-owned generator (one draw per call).
    pub fn sample_measurement_with(&self, rng: &mut rand_chacha::ChaCha8Rng) -> usize {
        let u: f64 = rng.random::<f64>() * self.norm_sqr();
        let mut acc = 0.0;
        let mut last_support = 0;
        for (x, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                last_support = x;
                acc += p;
                if u < acc {
                    return x;
                }
            }
        }
        last_support
    }
}

/// `floor((pi/4) sqrt(n/m))`, clamped to at least one iteration. Maximizes
/// the closed-form success probability to within one iteration.
pub fn optimal_iterations(n: u64, m: u64) -> u64 {
    assert!(m >= 1 && m < n, "need 1 <= m < n");
    let k = (PI / 4.0 * (n as f64 / m as f64).sqrt()).floor() as u64;
    k.max(1)
}

/// `sin^2((2k+1) asin(sqrt(m/n)))`: success probability after `k` clean
/// iterations from the uniform start.
pub fn closed_form_success(n: u64, m: u64, k: u64) -> f64 {
    assert!(m >= 1 && m <= n, "need 1 <= m <= n");
    let theta = (m as f64 / n as f64).sqrt().asin();
    let s = ((2 * k + 1) as f64 * theta).sin();
    s * s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_start_spreads_mass_evenly() {
        let s = GroverState::uniform(4).unwrap();
        for x in 0..4 {
            assert!((s.amplitude(x).re - 0.5).abs() < 1e-15);
        }
        let s = GroverState::uniform(1024).unwrap();
        assert!((s.amplitude(17).norm_sqr() - 1.0 / 1024.0).abs() < 1e-18);
        // Non-power-of-two spaces get an exact uniform superposition too.
        let s = GroverState::uniform(3).unwrap();
        assert!((s.amplitude(0).re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!(GroverState::uniform(1).is_err());
    }

    #[test]
    fn one_iteration_on_four_elements_is_certain() {
        let oracle = OracleSpec::from_predicate(4, |x| x == 2).unwrap();
        let s = GroverState::uniform(4).unwrap().iterate(&oracle, 1);
        assert!((s.success_probability(&oracle) - 1.0).abs() < 1e-12);
        assert_eq!(s.queries_used(), 1);
    }

    #[test]
    fn zero_iterations_leave_the_uniform_chance() {
        let oracle = OracleSpec::from_marked(8, [3, 5]).unwrap();
        let s = GroverState::uniform(8).unwrap();
        let s0 = s.iterate(&oracle, 0);
        assert_eq!(s0, s);
        assert!((s0.success_probability(&oracle) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn twenty_five_iterations_on_1024_nearly_succeed_then_overshoot() {
        let oracle = OracleSpec::from_predicate(1024, |x| x == 777).unwrap();
        let s25 = GroverState::uniform(1024).unwrap().iterate(&oracle, 25);
        let p25 = s25.success_probability(&oracle);
        assert!(p25 >= 0.999, "p25 = {p25}");
        let p26 = s25.iterate(&oracle, 1).success_probability(&oracle);
        assert!(p26 < p25, "overshoot expected: p26 = {p26}, p25 = {p25}");
    }

    #[test]
    fn optimal_iteration_counts_match_the_quarter_pi_rule() {
        assert_eq!(optimal_iterations(4, 1), 1);
        assert_eq!(optimal_iterations(65536, 1), 201);
        assert_eq!(optimal_iterations(4, 2), 1);
        // Brute-force check that the closed form is maximized within one step.
        for (n, m) in [(4u64, 1u64), (64, 1), (256, 4), (1024, 2)] {
            let k = optimal_iterations(n, m);
            let best = (0..=3 * k)
                .max_by(|&a, &b| {
                    closed_form_success(n, m, a).total_cmp(&closed_form_success(n, m, b))
                })
                .unwrap();
            assert!(
                closed_form_success(n, m, k) >= closed_form_success(n, m, best) - 1e-9
                    || best.abs_diff(k) <= 1,
                "n = {n}, m = {m}: k = {k}, best = {best}"
            );
        }
    }

    #[test]
    fn measurement_of_a_point_mass_is_deterministic() {
        let oracle = OracleSpec::from_predicate(4, |x| x == 2).unwrap();
        let s = GroverState::uniform(4).unwrap().iterate(&oracle, 1);
        for seed in 0..50 {
            assert_eq!(s.sample_measurement(seed), 2);
        }
    }

    #[test]
    fn measurement_is_reproducible_per_seed() {
        let s = GroverState::uniform(64).unwrap();
        for seed in [0u64, 1, 99] {
            assert_eq!(s.sample_measurement(seed), s.sample_measurement(seed));
        }
    }

    #[test]
    fn query_accounting_adds_up() {
        let oracle = OracleSpec::from_marked(16, [7]).unwrap();
        let s = GroverState::uniform(16)
            .unwrap()
            .iterate(&oracle, 2)
            .iterate(&oracle, 3);
        assert_eq!(s.queries_used(), 5);
    }
}
