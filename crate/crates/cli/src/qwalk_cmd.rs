//! `walksearch qwalk`: position distributions of the Hadamard walk, with an
//! optional closed-form comparison column.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use walksearch::qwalk::{closed_form_distribution, InitialState, QuantumWalkState};
use walksearch::{Error, Result};

use crate::util::{emit, to_json_string, OutputFormat};

#[derive(Debug, Args)]
pub struct QwalkArgs {
    #[arg(long)]
    pub steps: usize,
    /// coin0 | coin1 | balanced-real | balanced-imag
    #[arg(long, default_value = "coin0")]
    pub initial: String,
    /// Add the Theorem-style closed-form column and a max-abs-difference
    /// summary (coin0/coin1 starts only).
    #[arg(long)]
    pub closed_form: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Serialize)]
struct Row {
    position: i64,
    probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
}

#[derive(Serialize)]
struct QwalkOutput {
    steps: usize,
    initial: String,
    mean: f64,
    stddev: f64,
    distribution: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_max_abs_diff: Option<f64>,
}

pub fn run(args: QwalkArgs) -> Result<()> {
    let kind: InitialState = args.initial.parse()?;
    if args.closed_form && !matches!(kind, InitialState::Coin0 | InitialState::Coin1) {
        return Err(Error::InvalidArgument(
            "--closed-form covers the coin0 and coin1 starts only".into(),
        ));
    }
    let state = QuantumWalkState::new(kind, args.steps.max(1))?.evolve(args.steps)?;
    let d = state.distribution();
    let (mean, stddev) = d.mean_stddev();

    let mut max_diff: f64 = 0.0;
    let rows: Vec<Row> = d
        .iter()
        .map(|(position, probability)| {
            let closed_form = args.closed_form.then(|| {
                // The coin1 walk is the mirror image of the coin0 walk.
                let i = match kind {
                    InitialState::Coin1 => -position,
                    _ => position,
                };
                let value = closed_form_distribution(args.steps as u32, i);
                max_diff = max_diff.max((value - probability).abs());
                value
            });
            Row {
                position,
                probability,
                closed_form,
            }
        })
        .collect();

    let out = QwalkOutput {
        steps: args.steps,
        initial: kind.to_string(),
        mean,
        stddev,
        distribution: rows,
        closed_form_max_abs_diff: args.closed_form.then_some(max_diff),
    };

    let content = match args.format {
        OutputFormat::Json => to_json_string(&out),
        OutputFormat::Csv => {
            let mut s = String::new();
            if args.closed_form {
                s.push_str("position,probability,closed_form\n");
                for row in &out.distribution {
                    let _ = writeln!(
                        s,
                        "{},{},{}",
                        row.position,
                        row.probability,
                        row.closed_form.unwrap_or(f64::NAN)
                    );
                }
                eprintln!("closed-form max abs difference: {max_diff:e}");
            } else {
                s.push_str("position,probability\n");
                for row in &out.distribution {
                    let _ = writeln!(s, "{},{}", row.position, row.probability);
                }
            }
            s
        }
    };
    emit(&args.output, &content).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(())
}
