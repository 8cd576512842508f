//! The attack designer's decisions: where to start, how long to walk, how
//! often to repeat.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover;
use crate::markov::UniformWalkLaw;
use crate::rng::stream_rng;

use super::cipher::{Key, ToyCipher};
use super::scenario::{marked_flags, AttackScenario, KeySubset};

/// RNG stream reserved for planning decisions; trials use streams `0..`.
pub(crate) const PLAN_STREAM: u64 = u64::MAX;

/// Which engine walks the subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchPolicy {
    /// Uniform random walk with the marked keys absorbing.
    ClassicalUniform,
    /// Grover amplitude amplification with the marked keys as oracle.
    Grover,
}

impl std::str::FromStr for SearchPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical-uniform" | "classical" => Ok(SearchPolicy::ClassicalUniform),
            "grover" => Ok(SearchPolicy::Grover),
            other => Err(Error::invalid(format!(
                "unknown policy {other:?}; expected classical-uniform or grover"
            ))),
        }
    }
}

impl std::fmt::Display for SearchPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SearchPolicy::ClassicalUniform => "classical-uniform",
            SearchPolicy::Grover => "grover",
        };
        f.write_str(s)
    }
}

/// A fully resolved attack: subset, start point, per-iteration budget and
/// iteration count. `step_budget` counts walk transitions for the classical
/// policy and oracle queries for Grover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackPlan {
    /// `|K| = 2^key_bits` of the cipher.
    pub space_size: u64,
    pub subset: KeySubset,
    /// The walk's starting key, drawn uniformly from the subset. No metric
    /// is defined on the key space, so there is nothing smarter to minimize
    /// here; swap the field if you have structure to exploit.
    pub start: Key,
    pub step_budget: u64,
    pub iterations: u64,
    pub walker: SearchPolicy,
    pub seed: u64,
}

/// Resolve the four designer decisions for a scenario.
///
/// The step budget is the smallest count whose predicted per-iteration
/// success reaches `confidence` (classical: exact geometric hit law;
/// Grover: the optimal iteration count). The iteration count is
/// `ceil(1/p)` with `p` the per-iteration success the budget actually
/// achieves. `confidence` must exceed 1/2.
pub fn plan_attack(
    cipher: &ToyCipher,
    scenario: &AttackScenario,
    subset: KeySubset,
    policy: SearchPolicy,
    confidence: f64,
    seed: u64,
) -> Result<AttackPlan> {
    scenario.validate()?;
    subset.validate_for(cipher)?;
    if !(confidence > 0.5 && confidence < 1.0) {
        return Err(Error::invalid(format!(
            "confidence must lie in (1/2, 1), got {confidence}"
        )));
    }

    let size = subset.len();
    let flags = marked_flags(cipher, scenario, &subset);
    let m = flags.iter().filter(|&&b| b).count() as u64;

    let mut rng = stream_rng(seed, PLAN_STREAM);
    let start_index = rng.random_range(0..size);
    let start = subset.get(start_index);
    let start_marked = flags[start_index as usize];

    let (step_budget, iterations) = if m == 0 || m == size {
        // Nothing to search for (or nothing unmarked to walk through).
        (0, 1)
    } else {
        match policy {
            SearchPolicy::ClassicalUniform => {
                let law = UniformWalkLaw::new(size, m)?;
                let budget = law.min_steps_for(confidence)?;
                let p = if start_marked {
                    1.0
                } else {
                    law.hit_within(budget)
                };
                (budget, iterations_for(p))
            }
            SearchPolicy::Grover => {
                let k = grover::optimal_iterations(size, m);
                let p = grover::closed_form_success(size, m, k);
                (k, iterations_for(p))
            }
        }
    };

    Ok(AttackPlan {
        space_size: cipher.key_count(),
        subset,
        start,
        step_budget,
        iterations,
        walker: policy,
        seed,
    })
}

/// `ceil(1/p)`, the minimal count that honors "iterate at least 1/p times".
fn iterations_for(p: f64) -> u64 {
    if p >= 1.0 {
        return 1;
    }
    debug_assert!(p > 0.0);
    (1.0 / p).ceil() as u64
}
