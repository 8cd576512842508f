//! `walksearch markov`: absorption, hitting-time, stationary, and cover-time
//! analyses of the uniform marked walk, with optional Monte Carlo columns.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use walksearch::markov::{
    absorption_stats, estimate_cover_time, MarkedWalk, TransitionMatrix,
};
use walksearch::{Error, Result};

use crate::util::{emit, to_json_string, OutputFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Analysis {
    /// Absorption probability toward each marked target (Theorem-1 system).
    Absorb,
    /// Expected transitions to absorption (Theorem-2 system).
    Time,
    /// Stationary distribution / power limit (Theorem-3 hypothesis checked).
    Stationary,
    /// Monte Carlo cover time of the unmarked uniform walk.
    Cover,
}

#[derive(Debug, Args)]
pub struct MarkovArgs {
    /// State count.
    #[arg(long)]
    pub n: usize,
    /// Comma-separated marked state indices (0-based).
    #[arg(long, value_delimiter = ',', conflicts_with = "m")]
    pub marked: Vec<usize>,
    /// Shorthand: mark the first M states.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum)]
    pub analysis: Analysis,
    /// Monte Carlo trials; 0 skips the simulation columns (cover defaults
    /// to 10000).
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct MonteCarloSection {
    start_state: usize,
    trials: usize,
    mean_steps: f64,
    stderr_steps: f64,
    /// Fraction of trajectories absorbed at each marked state.
    target_fractions: BTreeMap<usize, f64>,
}

#[derive(Serialize)]
struct MarkovOutput {
    n: usize,
    marked: Vec<usize>,
    analysis: &'static str,
    /// Original indices of the transient states, aligned with `values`
    /// for absorb/time.
    #[serde(skip_serializing_if = "Option::is_none")]
    transient_states: Option<Vec<usize>>,
    /// time: one entry per transient state. stationary: one per state in
    /// original order.
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
    /// absorb: per-target vectors keyed by the marked state.
    #[serde(skip_serializing_if = "Option::is_none")]
    per_target: Option<BTreeMap<usize, Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monte_carlo: Option<MonteCarloSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cover_time: Option<walksearch::markov::CoverTimeEstimate>,
}

fn marked_set(args: &MarkovArgs) -> Result<Vec<usize>> {
    if let Some(m) = args.m {
        Ok((0..m).collect())
    } else {
        Ok(args.marked.clone())
    }
}

pub fn run(args: MarkovArgs) -> Result<()> {
    let marked = marked_set(&args)?;
    let mut out = MarkovOutput {
        n: args.n,
        marked: marked.clone(),
        analysis: match args.analysis {
            Analysis::Absorb => "absorb",
            Analysis::Time => "time",
            Analysis::Stationary => "stationary",
            Analysis::Cover => "cover",
        },
        transient_states: None,
        values: None,
        per_target: None,
        monte_carlo: None,
        cover_time: None,
    };

    match args.analysis {
        Analysis::Cover => {
            let p = TransitionMatrix::uniform(args.n)?;
            let trials = if args.trials == 0 { 10_000 } else { args.trials };
            out.cover_time = Some(estimate_cover_time(&p, 0, trials, args.seed)?);
        }
        Analysis::Stationary => {
            let pi = if marked.is_empty() {
                TransitionMatrix::uniform(args.n)?.stationary_distribution()?
            } else {
                let w = MarkedWalk::uniform(args.n, marked.clone())?;
                let canonical = w.transition().stationary_distribution()?;
                // Back to original indexing.
                let mut original = vec![0.0; args.n];
                for (c, &v) in canonical.iter().enumerate() {
                    original[w.original_of(c)] = v;
                }
                original
            };
            out.values = Some(pi);
        }
        Analysis::Absorb | Analysis::Time => {
            let w = MarkedWalk::uniform(args.n, marked.clone())?;
            let transient: Vec<usize> =
                (w.marked_count()..w.n()).map(|c| w.original_of(c)).collect();
            out.transient_states = Some(transient);
            match args.analysis {
                Analysis::Time => out.values = Some(w.expected_absorption_time()?),
                Analysis::Absorb => {
                    let mut per_target = BTreeMap::new();
                    for &j in w.marked() {
                        per_target.insert(j, w.absorption_probabilities(j)?);
                    }
                    out.per_target = Some(per_target);
                }
                _ => unreachable!(),
            }
            if args.trials > 0 {
                let start_canonical = w.n() - 1;
                let stats =
                    absorption_stats(&w, start_canonical, usize::MAX / 2, args.trials, args.seed);
                out.monte_carlo = Some(MonteCarloSection {
                    start_state: w.original_of(start_canonical),
                    trials: stats.trials,
                    mean_steps: stats.mean_steps,
                    stderr_steps: stats.stderr_steps,
                    target_fractions: w
                        .marked()
                        .iter()
                        .copied()
                        .zip(stats.target_fractions.iter().copied())
                        .collect(),
                });
            }
        }
    }

    let content = match args.format {
        OutputFormat::Json => to_json_string(&out),
        OutputFormat::Csv => to_csv(&out),
    };
    emit(&args.output, &content).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(())
}

fn to_csv(out: &MarkovOutput) -> String {
    let mut s = String::new();
    if let Some(per_target) = &out.per_target {
        s.push_str("target,state,value\n");
        let states = out.transient_states.as_deref().unwrap_or(&[]);
        for (target, values) in per_target {
            for (state, v) in states.iter().zip(values) {
                let _ = writeln!(s, "{target},{state},{v}");
            }
        }
    } else if let Some(values) = &out.values {
        s.push_str("state,value\n");
        match &out.transient_states {
            Some(states) => {
                for (state, v) in states.iter().zip(values) {
                    let _ = writeln!(s, "{state},{v}");
                }
            }
            None => {
                for (state, v) in values.iter().enumerate() {
                    let _ = writeln!(s, "{state},{v}");
                }
            }
        }
    } else if let Some(cover) = &out.cover_time {
        s.push_str("metric,value\n");
        let _ = writeln!(s, "mean,{}", cover.mean);
        let _ = writeln!(s, "stderr,{}", cover.stderr);
        let _ = writeln!(s, "trials,{}", cover.trials);
    }
    if let Some(mc) = &out.monte_carlo {
        let _ = writeln!(s, "mc_mean_steps,{}", mc.mean_steps);
        let _ = writeln!(s, "mc_stderr_steps,{}", mc.stderr_steps);
    }
    s
}
