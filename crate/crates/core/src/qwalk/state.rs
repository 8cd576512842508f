//! Direct simulation of the discrete-time Hadamard walk on the line.
//!
//! One step applies the Hadamard coin to the internal spin at every
//! position, then the conditional shift: the coin-|0> component moves one
//! position right, the coin-|1> component one position left. Amplitudes live
//! on a dense window `[-T, T]` fixed by the step budget `T`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Starting states at position 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    /// `|0> (x) |0>` — drifts right.
    Coin0,
    /// `|1> (x) |0>` — mirror image of `Coin0`.
    Coin1,
    /// `(|0> - |1>)/sqrt(2) (x) |0>` — real balanced coin. Not
    /// distribution-symmetric under this coin convention (see the symmetry
    /// tests); kept because it is a often-quoted choice.
    BalancedReal,
    /// `(|0> - i|1>)/sqrt(2) (x) |0>` — the symmetric balanced start.
    BalancedImag,
}

impl std::str::FromStr for InitialState {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coin0" => Ok(InitialState::Coin0),
            "coin1" => Ok(InitialState::Coin1),
            "balanced-real" => Ok(InitialState::BalancedReal),
            "balanced-imag" => Ok(InitialState::BalancedImag),
            other => Err(Error::invalid(format!(
                "unknown initial state {other:?}; expected coin0, coin1, balanced-real or balanced-imag"
            ))),
        }
    }
}

impl std::fmt::Display for InitialState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            InitialState::Coin0 => "coin0",
            InitialState::Coin1 => "coin1",
            InitialState::BalancedReal => "balanced-real",
            InitialState::BalancedImag => "balanced-imag",
        };
        f.write_str(s)
    }
}

/// Walker state: one coin-|0> and one coin-|1> amplitude per position of the
/// window `[-T, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumWalkState {
    budget: usize,
    amp0: Vec<Complex64>,
    amp1: Vec<Complex64>,
    steps_taken: usize,
}

impl QuantumWalkState {
    /// A fresh walker localized at the origin; `budget` is the largest
    /// number of steps the window can hold.
    pub fn new(kind: InitialState, budget: usize) -> Result<Self> {
        if budget < 1 {
            return Err(Error::invalid("step budget must be at least 1"));
        }
        let width = 2 * budget + 1;
        let mut state = QuantumWalkState {
            budget,
            amp0: vec![Complex64::ZERO; width],
            amp1: vec![Complex64::ZERO; width],
            steps_taken: 0,
        };
        let origin = budget;
        match kind {
            InitialState::Coin0 => state.amp0[origin] = Complex64::ONE,
            InitialState::Coin1 => state.amp1[origin] = Complex64::ONE,
            InitialState::BalancedReal => {
                state.amp0[origin] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                state.amp1[origin] = Complex64::new(-FRAC_1_SQRT_2, 0.0);
            }
            InitialState::BalancedImag => {
                state.amp0[origin] = Complex64::new(FRAC_1_SQRT_2, 0.0);
                state.amp1[origin] = Complex64::new(0.0, -FRAC_1_SQRT_2);
            }
        }
        Ok(state)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    /// Coin-|0> amplitude at `position`.
    pub fn amp0(&self, position: i64) -> Complex64 {
        self.amp(&self.amp0, position)
    }

    /// Coin-|1> amplitude at `position`.
    pub fn amp1(&self, position: i64) -> Complex64 {
        self.amp(&self.amp1, position)
    }

    fn amp(&self, amps: &[Complex64], position: i64) -> Complex64 {
        let t = self.budget as i64;
        if position < -t || position > t {
            Complex64::ZERO
        } else {
            amps[(position + t) as usize]
        }
    }

    /// Total probability; 1 up to rounding for any reachable state.
    pub fn norm_sqr(&self) -> f64 {
        self.amp0
            .iter()
            .chain(self.amp1.iter())
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// One application of the coined step (Hadamard, then shift).
    pub fn step(&self) -> Result<QuantumWalkState> {
        if self.steps_taken >= self.budget {
            return Err(Error::BudgetExceeded {
                taken: self.steps_taken,
                budget: self.budget,
            });
        }
        let width = self.amp0.len();
        let mut next0 = vec![Complex64::ZERO; width];
        let mut next1 = vec![Complex64::ZERO; width];
        for idx in 0..width {
            let a0 = self.amp0[idx];
            let a1 = self.amp1[idx];
            if a0 == Complex64::ZERO && a1 == Complex64::ZERO {
                continue;
            }
            let h0 = (a0 + a1) * FRAC_1_SQRT_2;
            let h1 = (a0 - a1) * FRAC_1_SQRT_2;
            // Support stays inside the window while steps_taken < budget.
            next0[idx + 1] += h0;
            next1[idx - 1] += h1;
        }
        Ok(QuantumWalkState {
            budget: self.budget,
            amp0: next0,
            amp1: next1,
            steps_taken: self.steps_taken + 1,
        })
    }

    /// `n` steps; `n = 0` returns the state unchanged.
    pub fn evolve(&self, n: usize) -> Result<QuantumWalkState> {
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

    /// Measurement distribution over positions: `|amp0|^2 + |amp1|^2` on the
    /// reachable lattice `{ i : |i| <= steps, (steps + i) even }`.
    pub fn distribution(&self) -> PositionDistribution {
        let steps = self.steps_taken as i64;
        let mut entries = BTreeMap::new();
        let mut i = -steps;
        while i <= steps {
            entries.insert(i, self.amp0(i).norm_sqr() + self.amp1(i).norm_sqr());
            i += 2;
        }
        PositionDistribution { entries }
    }
}

/// A probability distribution over integer positions.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    entries: BTreeMap<i64, f64>,
}

/// One row of the JSON/CSV export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositionProbability {
    pub position: i64,
    pub probability: f64,
}

impl PositionDistribution {
    pub fn from_entries(entries: BTreeMap<i64, f64>) -> Self {
        PositionDistribution { entries }
    }

    pub fn probability(&self, position: i64) -> f64 {
        self.entries.get(&position).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.entries.iter().map(|(&p, &v)| (p, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    /// First and second moments of position.
    pub fn mean_stddev(&self) -> (f64, f64) {
        assert!(!self.entries.is_empty(), "distribution is empty");
        let mean: f64 = self.iter().map(|(i, p)| i as f64 * p).sum();
        let var: f64 = self
            .iter()
            .map(|(i, p)| (i as f64 - mean) * (i as f64 - mean) * p)
            .sum();
        (mean, var.max(0.0).sqrt())
    }

    /// Rows for the JSON array export.
    pub fn to_rows(&self) -> Vec<PositionProbability> {
        self.iter()
            .map(|(position, probability)| PositionProbability {
                position,
                probability,
            })
            .collect()
    }

    /// Two-column CSV (`position,probability`), one row per lattice point.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "position,probability")?;
        for (i, p) in self.iter() {
            writeln!(w, "{i},{p}")?;
        }
        Ok(())
    }
}
