//! Exact-arithmetic twin of the float simulator.
//!
//! Every amplitude of the Hadamard walk is a Gaussian integer divided by
//! `sqrt(2)^scale`, so small walks can be checked against published
//! fraction tables with zero rounding error. Probabilities come out as
//! dyadic rationals `numerator / 2^scale`.

use crate::error::{Error, Result};

use super::state::InitialState;

/// `re + i*im`, the integer part of an amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct GaussInt {
    re: i128,
    im: i128,
}

impl GaussInt {
    const ZERO: GaussInt = GaussInt { re: 0, im: 0 };

    fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    fn add(self, other: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re + other.re,
            im: self.im + other.im,
        }
    }

    fn sub(self, other: GaussInt) -> GaussInt {
        GaussInt {
            re: self.re - other.re,
            im: self.im - other.im,
        }
    }

    fn norm_sqr(self) -> u128 {
        (self.re * self.re + self.im * self.im) as u128
    }
}

/// An exactly-represented probability `numerator / 2^log2_denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicProbability {
    pub numerator: u128,
    pub log2_denominator: u32,
}

impl DyadicProbability {
    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Exact comparison against `num / den`; `den` must be a power of two.
    pub fn equals_fraction(&self, num: u64, den: u64) -> bool {
        assert!(den.is_power_of_two(), "denominator must be a power of two");
        let den_log2 = den.trailing_zeros();
        // self.num / 2^self.log2 == num / 2^den_log2
        // <=> self.num * 2^den_log2 == num * 2^self.log2
        if self.log2_denominator >= den_log2 {
            self.numerator == (num as u128) << (self.log2_denominator - den_log2)
        } else {
            (self.numerator << (den_log2 - self.log2_denominator)) == num as u128
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / 2f64.powi(self.log2_denominator as i32)
    }
}

/// Walker state with exact amplitudes. Practical for a few dozen steps; the
/// integer parts double per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactWalkState {
    budget: usize,
    amp0: Vec<GaussInt>,
    amp1: Vec<GaussInt>,
    /// Number of 1/sqrt(2) factors pulled out of the amplitudes.
    scale: u32,
    steps_taken: usize,
}

impl ExactWalkState {
    pub fn new(kind: InitialState, budget: usize) -> Result<Self> {
        if budget < 1 {
            return Err(Error::invalid("step budget must be at least 1"));
        }
        if budget > 60 {
            return Err(Error::invalid(
                "exact mode supports at most 60 steps (integer amplitudes double per step)",
            ));
        }
        let width = 2 * budget + 1;
        let mut state = ExactWalkState {
            budget,
            amp0: vec![GaussInt::ZERO; width],
            amp1: vec![GaussInt::ZERO; width],
            scale: 0,
            steps_taken: 0,
        };
        let origin = budget;
        match kind {
            InitialState::Coin0 => state.amp0[origin] = GaussInt { re: 1, im: 0 },
            InitialState::Coin1 => state.amp1[origin] = GaussInt { re: 1, im: 0 },
            InitialState::BalancedReal => {
                state.amp0[origin] = GaussInt { re: 1, im: 0 };
                state.amp1[origin] = GaussInt { re: -1, im: 0 };
                state.scale = 1;
            }
            InitialState::BalancedImag => {
                state.amp0[origin] = GaussInt { re: 1, im: 0 };
                state.amp1[origin] = GaussInt { re: 0, im: -1 };
                state.scale = 1;
            }
        }
        Ok(state)
    }

    pub fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    pub fn step(&self) -> Result<ExactWalkState> {
        if self.steps_taken >= self.budget {
            return Err(Error::BudgetExceeded {
                taken: self.steps_taken,
                budget: self.budget,
            });
        }
        let width = self.amp0.len();
        let mut next0 = vec![GaussInt::ZERO; width];
        let mut next1 = vec![GaussInt::ZERO; width];
        for idx in 0..width {
            let a0 = self.amp0[idx];
            let a1 = self.amp1[idx];
            if a0.is_zero() && a1.is_zero() {
                continue;
            }
            // Hadamard without the 1/sqrt(2): tracked in `scale`.
            next0[idx + 1] = next0[idx + 1].add(a0.add(a1));
            next1[idx - 1] = next1[idx - 1].add(a0.sub(a1));
        }
        Ok(ExactWalkState {
            budget: self.budget,
            amp0: next0,
            amp1: next1,
            scale: self.scale + 1,
            steps_taken: self.steps_taken + 1,
        })
    }

    pub fn evolve(&self, n: usize) -> Result<ExactWalkState> {
        if self.steps_taken + n > self.budget {
            return Err(Error::BudgetExceeded {
                taken: self.steps_taken,
                budget: self.budget,
            });
        }
        let mut state = self.clone();
        for _ in 0..n {
            state = state.step()?;
        }
        Ok(state)
    }

    /// Exact measurement probability at `position`.
    pub fn probability(&self, position: i64) -> DyadicProbability {
        let t = self.budget as i64;
        let numerator = if position < -t || position > t {
            0
        } else {
            let idx = (position + t) as usize;
            self.amp0[idx].norm_sqr() + self.amp1[idx].norm_sqr()
        };
        DyadicProbability {
            numerator,
            log2_denominator: self.scale,
        }
    }

    /// Float view of the exact distribution on the reachable lattice.
    pub fn distribution_f64(&self) -> Vec<(i64, f64)> {
        let steps = self.steps_taken as i64;
        let mut out = Vec::new();
        let mut i = -steps;
        while i <= steps {
            out.push((i, self.probability(i).to_f64()));
            i += 2;
        }
        out
    }
}
