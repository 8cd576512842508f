//! Seeded Monte Carlo counterparts of the absorption and cover-time theory.
//!
//! Trajectory `t` of a batch always runs on RNG stream `t`, so estimates are
//! reproducible bit-for-bit for a given `(seed, trials)` no matter how many
//! workers rayon spreads them over.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{draw_other, stream_rng};

use super::matrix::TransitionMatrix;
use super::walk::MarkedWalk;

/// One sampled realization of a marked walk, in canonical state indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTrajectory {
    pub start: usize,
    /// States visited after `start`, in order.
    pub steps: Vec<usize>,
    /// `(marked state, transition count)` if the walk absorbed within the
    /// step limit.
    pub absorbed_at: Option<(usize, usize)>,
    pub rng_seed: u64,
}

/// Sample the walk from `start` (canonical index) until a marked state or
/// `max_steps` transitions. Deterministic for a fixed seed.
pub fn simulate_trajectory(
    w: &MarkedWalk,
    start: usize,
    max_steps: usize,
    seed: u64,
) -> WalkTrajectory {
    let mut rng = stream_rng(seed, 0);
    let mut traj = WalkTrajectory {
        start,
        steps: Vec::new(),
        absorbed_at: None,
        rng_seed: seed,
    };
    if w.is_marked_canonical(start) {
        traj.absorbed_at = Some((start, 0));
        return traj;
    }
    let mut current = start;
    for step in 1..=max_steps {
        current = draw_other(w.n(), current, &mut rng);
        traj.steps.push(current);
        if w.is_marked_canonical(current) {
            traj.absorbed_at = Some((current, step));
            break;
        }
    }
    traj
}

/// Aggregate absorption behavior over many independent trajectories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsorptionStats {
    pub trials: usize,
    pub absorbed: usize,
    /// Mean transitions to absorption over the absorbed trials.
    pub mean_steps: f64,
    /// Standard error of `mean_steps`.
    pub stderr_steps: f64,
    /// Fraction of absorbed trials ending at each marked target, in
    /// `MarkedWalk::marked()` order.
    pub target_fractions: Vec<f64>,
}

/// Run `trials` trajectories from the canonical state `start` and summarize
/// them. Trajectory `t` uses stream `t` of `seed`.
pub fn absorption_stats(
    w: &MarkedWalk,
    start: usize,
    max_steps: usize,
    trials: usize,
    seed: u64,
) -> AbsorptionStats {
    let m = w.marked_count();
    let n = w.n();
    let outcomes: Vec<Option<(usize, usize)>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(seed, t);
            if w.is_marked_canonical(start) {
                return Some((0, start));
            }
            let mut current = start;
            for step in 1..=max_steps {
                current = draw_other(n, current, &mut rng);
                if w.is_marked_canonical(current) {
                    return Some((step, current));
                }
            }
            None
        })
        .collect();

    let mut hits_per_target = vec![0usize; m];
    let mut absorbed = 0usize;
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for outcome in &outcomes {
        if let Some((steps, target)) = outcome {
            absorbed += 1;
            hits_per_target[*target] += 1;
            sum += *steps as f64;
            sum_sq += (*steps as f64) * (*steps as f64);
        }
    }
    let mean = if absorbed > 0 { sum / absorbed as f64 } else { f64::NAN };
    let stderr = if absorbed > 1 {
        let var = (sum_sq - sum * sum / absorbed as f64) / (absorbed as f64 - 1.0);
        (var.max(0.0) / absorbed as f64).sqrt()
    } else {
        f64::NAN
    };
    AbsorptionStats {
        trials,
        absorbed,
        mean_steps: mean,
        stderr_steps: stderr,
        target_fractions: hits_per_target
            .iter()
            .map(|&h| h as f64 / absorbed.max(1) as f64)
            .collect(),
    }
}

/// Geometric first-hit time with per-step probability `q`, support `1..`.
/// Distributionally identical to counting steps of a uniform marked walk
/// until absorption, which lets the attack harness skip explicit
/// trajectories on large key spaces.
pub fn geometric_hit_time(q: f64, rng: &mut ChaCha8Rng) -> u64 {
    debug_assert!(q > 0.0 && q <= 1.0);
    if q >= 1.0 {
        return 1;
    }
    let u: f64 = rng.random();
    let t = (f64::ln_1p(-u) / f64::ln_1p(-q)).floor() as u64 + 1;
    t.max(1)
}

/// Monte Carlo cover-time estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverTimeEstimate {
    pub trials: usize,
    pub mean: f64,
    pub stderr: f64,
}

/// Estimate the expected number of steps for the chain to visit every state
/// at least once, starting from `start`. The chain must be irreducible
/// (otherwise the cover time is infinite).
pub fn estimate_cover_time(
    p: &TransitionMatrix,
    start: usize,
    trials: usize,
    seed: u64,
) -> Result<CoverTimeEstimate> {
    let n = p.n();
    if start >= n {
        return Err(Error::invalid(format!("start state {start} out of range")));
    }
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    if !p.classify().is_irreducible() {
        return Err(Error::invalid(
            "chain is not irreducible: cover time is infinite",
        ));
    }

    // Row CDFs for inverse-CDF sampling, plus the last supported state of
    // each row as a guard against u falling beyond the rounded total.
    let cdfs: Vec<(Vec<f64>, usize)> = (0..n)
        .map(|r| {
            let mut acc = 0.0;
            let mut cdf = Vec::with_capacity(n);
            let mut last_support = 0;
            for (j, &prob) in p.row(r).iter().enumerate() {
                acc += prob;
                cdf.push(acc);
                if prob > 0.0 {
                    last_support = j;
                }
            }
            (cdf, last_support)
        })
        .collect();

    let samples: Vec<u64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream_rng(seed, t);
            let mut visited = vec![false; n];
            visited[start] = true;
            let mut remaining = n - 1;
            let mut current = start;
            let mut steps: u64 = 0;
            while remaining > 0 {
                let u: f64 = rng.random();
                let (cdf, last_support) = &cdfs[current];
                let next = cdf.partition_point(|&c| c <= u).min(*last_support);
                current = next;
                steps += 1;
                if !visited[current] {
                    visited[current] = true;
                    remaining -= 1;
                }
            }
            steps
        })
        .collect();

    let sum: f64 = samples.iter().map(|&s| s as f64).sum();
    let mean = sum / trials as f64;
    let var = samples
        .iter()
        .map(|&s| (s as f64 - mean) * (s as f64 - mean))
        .sum::<f64>()
        / (trials as f64 - 1.0).max(1.0);
    Ok(CoverTimeEstimate {
        trials,
        mean,
        stderr: (var / trials as f64).sqrt(),
    })
}
