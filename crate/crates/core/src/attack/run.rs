//! Attack execution: seeded trials, classical-vs-theory reconciliation, and
//! the classical/quantum speedup comparison.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::{self, GroverState, OracleSpec};
use crate::markov::{geometric_hit_time, UniformWalkLaw, MAX_DENSE_STATES};
use crate::rng::{draw_other, stream_rng};

use super::cipher::{Key, ToyCipher};
use super::plan::{AttackPlan, SearchPolicy};
use super::scenario::{marked_flags, AttackScenario, KeySubset};

/// Outcome of a batch of independent attack trials under one plan.
///
/// `wall_time_seconds` is the only non-deterministic field; everything else
/// is a pure function of `(plan, trials)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    /// The first verified key any trial found.
    pub found_key: Option<Key>,
    pub trials_run: usize,
    /// Walk steps (classical) or oracle queries (Grover) consumed by each
    /// trial, in trial order.
    pub steps_or_queries_per_trial: Vec<u64>,
    pub empirical_success_rate: f64,
    /// Predicted probability that a single trial (all its iterations)
    /// succeeds.
    pub predicted_success_rate: f64,
    /// Theory mean: untruncated expected steps to absorption for the
    /// classical walk, expected total queries for Grover. `None` when the
    /// subset holds no consistent key.
    pub predicted_mean_steps: Option<f64>,
    /// Whether any scenario-consistent key exists inside the subset, checked
    /// post hoc by exhaustive scan.
    pub subset_contains_secret: bool,
    /// Number of scenario-consistent keys inside the subset.
    pub marked_count: u64,
    pub wall_time_seconds: f64,
}

impl AttackReport {
    pub fn mean_steps_or_queries(&self) -> f64 {
        if self.steps_or_queries_per_trial.is_empty() {
            return f64::NAN;
        }
        self.steps_or_queries_per_trial.iter().map(|&s| s as f64).sum::<f64>()
            / self.steps_or_queries_per_trial.len() as f64
    }

    /// Standard error of the per-trial step/query mean.
    pub fn stderr_steps_or_queries(&self) -> f64 {
        let n = self.steps_or_queries_per_trial.len();
        if n < 2 {
            return f64::NAN;
        }
        let mean = self.mean_steps_or_queries();
        let var = self
            .steps_or_queries_per_trial
            .iter()
            .map(|&s| (s as f64 - mean) * (s as f64 - mean))
            .sum::<f64>()
            / (n as f64 - 1.0);
        (var / n as f64).sqrt()
    }
}

/// Run `trials` independent executions of `plan`. Trial `t` draws from
/// stream `t` of `plan.seed`, so the report (wall time aside) is
/// reproducible bit-for-bit regardless of worker count.
pub fn run_attack(
    cipher: &ToyCipher,
    scenario: &AttackScenario,
    plan: &AttackPlan,
    trials: usize,
) -> Result<AttackReport> {
    let begin = std::time::Instant::now();
    scenario.validate()?;
    plan.subset.validate_for(cipher)?;
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    let size = plan.subset.len();
    let start_index = plan
        .subset
        .index_of(plan.start)
        .ok_or_else(|| Error::invalid("plan start key is outside the subset"))?;

    let flags = marked_flags(cipher, scenario, &plan.subset);
    let m = flags.iter().filter(|&&b| b).count() as u64;
    let start_marked = flags[start_index as usize];

    let outcomes: Vec<(u64, Option<Key>)> = match plan.walker {
        SearchPolicy::ClassicalUniform => {
            let marked_list: Vec<Key> = if size > MAX_DENSE_STATES as u64 {
                flags
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &f)| f.then(|| plan.subset.get(i as u64)))
                    .collect()
            } else {
                Vec::new()
            };
            (0..trials as u64)
                .into_par_iter()
                .map(|t| {
                    let mut rng = stream_rng(plan.seed, t);
                    classical_trial(plan, &flags, &marked_list, m, start_index, start_marked, &mut rng)
                })
                .collect()
        }
        SearchPolicy::Grover => {
            // The evolved statevector is a pure function of the plan; build
            // it once and let every trial measure its own copy.
            let evolved = if m > 0 && m < size {
                let oracle = OracleSpec::from_predicate(size as usize, |i| flags[i])?;
                Some(GroverState::uniform(size as usize)?.iterate(&oracle, plan.step_budget))
            } else {
                None
            };
            (0..trials as u64)
                .into_par_iter()
                .map(|t| {
                    let mut rng = stream_rng(plan.seed, t);
                    grover_trial(plan, &flags, m, evolved.as_ref(), &mut rng)
                })
                .collect()
        }
    };

    // Soundness: re-verify by direct encryption, independent of the engine.
    let mut found_key = None;
    let mut successes = 0usize;
    let mut steps = Vec::with_capacity(trials);
    for (consumed, key) in outcomes {
        let verified = key.filter(|&k| scenario.key_consistent(cipher, k));
        assert_eq!(
            verified, key,
            "engine reported a key that fails the scenario constraints"
        );
        if let Some(k) = verified {
            successes += 1;
            if found_key.is_none() {
                found_key = Some(k);
            }
        }
        steps.push(consumed);
    }

    let (predicted_success, predicted_mean) =
        predict(plan.walker, size, m, start_marked, plan.step_budget, plan.iterations);

    Ok(AttackReport {
        found_key,
        trials_run: trials,
        steps_or_queries_per_trial: steps,
        empirical_success_rate: successes as f64 / trials as f64,
        predicted_success_rate: predicted_success,
        predicted_mean_steps: predicted_mean,
        subset_contains_secret: m > 0,
        marked_count: m,
        wall_time_seconds: begin.elapsed().as_secs_f64(),
    })
}

/// Theory predictions for one trial of the given shape.
fn predict(
    policy: SearchPolicy,
    size: u64,
    m: u64,
    start_marked: bool,
    budget: u64,
    iterations: u64,
) -> (f64, Option<f64>) {
    if m == 0 {
        return (0.0, None);
    }
    if m == size {
        return (1.0, Some(0.0));
    }
    match policy {
        SearchPolicy::ClassicalUniform => {
            let law = UniformWalkLaw::new(size, m).expect("validated above");
            if start_marked {
                (1.0, Some(0.0))
            } else {
                (
                    law.hit_within(budget * iterations),
                    Some(law.expected_absorption_time()),
                )
            }
        }
        SearchPolicy::Grover => {
            let p = grover::closed_form_success(size, m, budget);
            let overall = -f64::exp_m1(iterations as f64 * f64::ln_1p(-p));
            // Expected queries: budget per attempt, geometric number of
            // attempts truncated at `iterations`.
            let expected_attempts = if p > 0.0 {
                (1.0 - (1.0 - p).powi(iterations as i32)) / p
            } else {
                iterations as f64
            };
            (overall, Some(budget as f64 * expected_attempts))
        }
    }
}

fn classical_trial(
    plan: &AttackPlan,
    flags: &[bool],
    marked_list: &[Key],
    m: u64,
    start_index: u64,
    start_marked: bool,
    rng: &mut ChaCha8Rng,
) -> (u64, Option<Key>) {
    if m == 0 {
        return (0, None);
    }
    if start_marked {
        return (0, Some(plan.start));
    }
    let size = plan.subset.len();
    let total_budget = plan.step_budget * plan.iterations;
    if size > MAX_DENSE_STATES as u64 {
        // Hit times of the uniform walk are geometric with rate m/(n-1);
        // sampling the hit time directly is distributionally identical to
        // walking, restarts included (every step from an unmarked state
        // hits with the same probability).
        let q = m as f64 / (size as f64 - 1.0);
        let t = geometric_hit_time(q, rng);
        if t <= total_budget {
            let which = rng.random_range(0..marked_list.len());
            (t, Some(marked_list[which]))
        } else {
            (total_budget, None)
        }
    } else {
        let n = size as usize;
        let mut consumed = 0u64;
        for _ in 0..plan.iterations {
            let mut current = start_index as usize;
            for _ in 0..plan.step_budget {
                let next = draw_other(n, current, rng);
                consumed += 1;
                if flags[next] {
                    return (consumed, Some(plan.subset.get(next as u64)));
                }
                current = next;
            }
        }
        (consumed, None)
    }
}

fn grover_trial(
    plan: &AttackPlan,
    flags: &[bool],
    m: u64,
    evolved: Option<&GroverState>,
    rng: &mut ChaCha8Rng,
) -> (u64, Option<Key>) {
    if m == 0 {
        return (0, None);
    }
    let size = plan.subset.len();
    if m == size {
        // Uniform superposition already measures a marked key.
        let idx = rng.random_range(0..size);
        return (0, Some(plan.subset.get(idx)));
    }
    let state = evolved.expect("statevector built for 0 < m < size");
    let mut queries = 0u64;
    for _ in 0..plan.iterations {
        let idx = state.sample_measurement_with(rng);
        queries += plan.step_budget;
        if flags[idx] {
            return (queries, Some(plan.subset.get(idx as u64)));
        }
    }
    (queries, None)
}

/// Side-by-side comparison of the two policies on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedupReport {
    pub subset_size: u64,
    pub marked_count: u64,
    pub trials: usize,
    pub classical_mean_steps: f64,
    pub quantum_mean_queries: f64,
    /// `classical_mean_steps / quantum_mean_queries`; for a single marked
    /// key this approaches `(|A|-1) / floor(pi/4 sqrt(|A|))`.
    pub speedup_ratio: f64,
    pub classical: AttackReport,
    pub quantum: AttackReport,
}

/// Plan and run both engines on the same instance and seed. The classical
/// plan is built at confidence 0.999 so budget truncation stays negligible
/// relative to the mean.
pub fn speedup_report(
    cipher: &ToyCipher,
    scenario: &AttackScenario,
    subset: KeySubset,
    seed: u64,
    trials: usize,
) -> Result<SpeedupReport> {
    const PLANNING_CONFIDENCE: f64 = 0.999;
    let classical_plan = super::plan::plan_attack(
        cipher,
        scenario,
        subset.clone(),
        SearchPolicy::ClassicalUniform,
        PLANNING_CONFIDENCE,
        seed,
    )?;
    let quantum_plan = super::plan::plan_attack(
        cipher,
        scenario,
        subset,
        SearchPolicy::Grover,
        PLANNING_CONFIDENCE,
        seed,
    )?;
    let classical = run_attack(cipher, scenario, &classical_plan, trials)?;
    let quantum = run_attack(cipher, scenario, &quantum_plan, trials)?;
    let classical_mean = classical.mean_steps_or_queries();
    let quantum_mean = quantum.mean_steps_or_queries();
    Ok(SpeedupReport {
        subset_size: classical_plan.subset.len(),
        marked_count: classical.marked_count,
        trials,
        classical_mean_steps: classical_mean,
        quantum_mean_queries: quantum_mean,
        speedup_ratio: classical_mean / quantum_mean,
        classical,
        quantum,
    })
}
