//! `walksearch attack`: plan and run key-recovery experiments from flags or
//! a batch config file, with a side-by-side classical/Grover compare mode.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};

use walksearch::attack::{
    plan_attack, run_attack, speedup_report, AttackPlan, AttackReport, AttackScenario, Key,
    KeySubset, PlaintextModel, SearchPolicy, SpeedupReport, ToyCipher,
};
use walksearch::{Error, Result};

use crate::util::{emit, parse_blocks, parse_hex, parse_pairs, parse_subset, to_json_string, OutputFormat};

#[derive(Debug, Args)]
pub struct AttackArgs {
    /// Batch config file (JSON); replaces the inline flags below.
    #[arg(long, conflicts_with_all = ["cipher", "scenario", "pairs", "ciphertexts", "subset", "policy"])]
    pub config: Option<PathBuf>,
    /// xor16 | spn16
    #[arg(long)]
    pub cipher: Option<String>,
    /// known-plaintext | chosen-plaintext | chosen-ciphertext | ciphertext-only
    #[arg(long)]
    pub scenario: Option<String>,
    /// PLAIN:CIPHER hex pairs, comma separated.
    #[arg(long)]
    pub pairs: Option<String>,
    /// Ciphertext blocks (hex, comma separated) for ciphertext-only.
    #[arg(long)]
    pub ciphertexts: Option<String>,
    /// Key subset: LO-HI range, comma-separated keys, or "full".
    #[arg(long, default_value = "full")]
    pub subset: String,
    /// classical-uniform | grover
    #[arg(long, default_value = "classical-uniform")]
    pub policy: String,
    #[arg(long, default_value_t = 0.95)]
    pub confidence: f64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the planned per-iteration budget.
    #[arg(long)]
    pub step_budget: Option<u64>,
    /// Override the planned iteration count.
    #[arg(long)]
    pub iterations: Option<u64>,
    /// Override the planned start key (hex).
    #[arg(long)]
    pub start: Option<String>,
    /// Run both policies on the instance and report the speedup instead.
    #[arg(long)]
    pub compare: bool,
    /// Keep wall-clock time in the report (off by default so identical
    /// invocations emit identical bytes).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// One experiment of a batch config. Unknown fields are rejected.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentSpec {
    cipher: String,
    scenario: ScenarioSpec,
    #[serde(default)]
    subset: Option<SubsetSpec>,
    #[serde(default = "default_policy")]
    policy: String,
    #[serde(default = "default_confidence")]
    confidence: f64,
    #[serde(default = "default_trials")]
    trials: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    step_budget: Option<u64>,
    #[serde(default)]
    iterations: Option<u64>,
    #[serde(default)]
    start: Option<String>,
    #[serde(default)]
    compare: bool,
}

fn default_policy() -> String {
    "classical-uniform".into()
}
fn default_confidence() -> f64 {
    0.95
}
fn default_trials() -> usize {
    100
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioSpec {
    kind: String,
    #[serde(default)]
    pairs: Vec<String>,
    #[serde(default)]
    ciphertexts: Vec<String>,
    #[serde(default)]
    plaintext_model: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SubsetSpec {
    Text(String),
    Keys(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchConfig {
    experiments: Vec<ExperimentSpec>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ExperimentOutput {
    Attack {
        cipher: String,
        scenario_kind: String,
        found_key_hex: Option<String>,
        plan: AttackPlan,
        report: AttackReport,
    },
    Compare {
        cipher: String,
        scenario_kind: String,
        speedup: SpeedupReport,
    },
}

fn build_scenario(kind: &str, pairs: Vec<(u32, u32)>, ciphertexts: Vec<u32>, model: Option<&str>) -> Result<AttackScenario> {
    let plaintext_model = match model {
        None | Some("printable-high-byte") => PlaintextModel::PrintableHighByte,
        Some(other) => {
            return Err(Error::InvalidArgument(format!(
                "unknown plaintext model {other:?}"
            )))
        }
    };
    let scenario = match kind {
        "known-plaintext" => AttackScenario::KnownPlaintext { pairs },
        "chosen-plaintext" => AttackScenario::ChosenPlaintext { pairs },
        "chosen-ciphertext" => AttackScenario::ChosenCiphertext { pairs },
        "ciphertext-only" => AttackScenario::CiphertextOnly {
            ciphertexts,
            plaintext_model,
        },
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown scenario {other:?}"
            )))
        }
    };
    scenario.validate()?;
    Ok(scenario)
}

struct Experiment {
    cipher: ToyCipher,
    scenario: AttackScenario,
    subset: KeySubset,
    policy: SearchPolicy,
    confidence: f64,
    trials: usize,
    seed: u64,
    step_budget: Option<u64>,
    iterations: Option<u64>,
    start: Option<Key>,
    compare: bool,
}

impl Experiment {
    fn run(&self, timing: bool) -> Result<ExperimentOutput> {
        if self.compare {
            let mut speedup = speedup_report(
                &self.cipher,
                &self.scenario,
                self.subset.clone(),
                self.seed,
                self.trials,
            )?;
            if !timing {
                speedup.classical.wall_time_seconds = 0.0;
                speedup.quantum.wall_time_seconds = 0.0;
            }
            return Ok(ExperimentOutput::Compare {
                cipher: self.cipher.name().into(),
                scenario_kind: self.scenario.kind_name().into(),
                speedup,
            });
        }
        let mut plan = plan_attack(
            &self.cipher,
            &self.scenario,
            self.subset.clone(),
            self.policy,
            self.confidence,
            self.seed,
        )?;
        if let Some(budget) = self.step_budget {
            plan.step_budget = budget;
        }
        if let Some(iterations) = self.iterations {
            plan.iterations = iterations.max(1);
        }
        if let Some(start) = self.start {
            if !plan.subset.contains(start) {
                return Err(Error::InvalidArgument(format!(
                    "start key {start:#06x} is outside the subset"
                )));
            }
            plan.start = start;
        }
        let mut report = run_attack(&self.cipher, &self.scenario, &plan, self.trials)?;
        if !timing {
            report.wall_time_seconds = 0.0;
        }
        Ok(ExperimentOutput::Attack {
            cipher: self.cipher.name().into(),
            scenario_kind: self.scenario.kind_name().into(),
            found_key_hex: report.found_key.map(|k| format!("{k:#06x}")),
            plan,
            report,
        })
    }
}

fn experiment_from_flags(args: &AttackArgs) -> Result<Experiment> {
    let cipher: ToyCipher = args
        .cipher
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--cipher is required (or use --config)".into()))?
        .parse()?;
    let kind = args
        .scenario
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("--scenario is required (or use --config)".into()))?;
    let pairs = match &args.pairs {
        Some(s) => parse_pairs(s)?,
        None => Vec::new(),
    };
    let ciphertexts = match &args.ciphertexts {
        Some(s) => parse_blocks(s)?,
        None => Vec::new(),
    };
    let scenario = build_scenario(kind, pairs, ciphertexts, None)?;
    let subset = parse_subset(&args.subset, &cipher)?;
    let start = args.start.as_deref().map(parse_hex).transpose()?;
    Ok(Experiment {
        cipher,
        scenario,
        subset,
        policy: args.policy.parse()?,
        confidence: args.confidence,
        trials: args.trials,
        seed: args.seed,
        step_budget: args.step_budget,
        iterations: args.iterations,
        start,
        compare: args.compare,
    })
}

fn experiment_from_spec(spec: &ExperimentSpec) -> Result<Experiment> {
    let cipher: ToyCipher = spec.cipher.parse()?;
    let pairs = spec
        .pairs_parsed()
        .map_err(|e| Error::InvalidArgument(format!("bad pairs in config: {e}")))?;
    let ciphertexts: Vec<u32> = spec
        .scenario
        .ciphertexts
        .iter()
        .map(|s| parse_hex(s))
        .collect::<Result<_>>()?;
    let scenario = build_scenario(
        &spec.scenario.kind,
        pairs,
        ciphertexts,
        spec.scenario.plaintext_model.as_deref(),
    )?;
    let subset = match &spec.subset {
        None => KeySubset::full_space(&cipher),
        Some(SubsetSpec::Text(s)) => parse_subset(s, &cipher)?,
        Some(SubsetSpec::Keys(keys)) => {
            KeySubset::explicit(keys.iter().map(|k| parse_hex(k)).collect::<Result<_>>()?)?
        }
    };
    let start = spec.start.as_deref().map(parse_hex).transpose()?;
    Ok(Experiment {
        cipher,
        scenario,
        subset,
        policy: spec.policy.parse()?,
        confidence: spec.confidence,
        trials: spec.trials,
        seed: spec.seed,
        step_budget: spec.step_budget,
        iterations: spec.iterations,
        start,
        compare: spec.compare,
    })
}

impl ExperimentSpec {
    fn pairs_parsed(&self) -> Result<Vec<(u32, u32)>> {
        self.scenario
            .pairs
            .iter()
            .map(|s| {
                let (x, y) = s.split_once(':').ok_or_else(|| {
                    Error::InvalidArgument(format!("pair {s:?} is not PLAIN:CIPHER"))
                })?;
                Ok((parse_hex(x)?, parse_hex(y)?))
            })
            .collect()
    }
}

/// Returns whether every (non-compare) experiment found a key, so main can
/// translate "completed but found nothing" into its own exit code.
pub fn run(args: AttackArgs) -> Result<bool> {
    let experiments: Vec<Experiment> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {path:?}: {e}")))?;
            let config: BatchConfig = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidArgument(format!("bad config: {e}")))?;
            config
                .experiments
                .iter()
                .map(experiment_from_spec)
                .collect::<Result<_>>()?
        }
        None => vec![experiment_from_flags(&args)?],
    };

    let outputs: Vec<ExperimentOutput> = experiments
        .iter()
        .map(|e| e.run(args.timing))
        .collect::<Result<_>>()?;

    let all_found = outputs.iter().all(|o| match o {
        ExperimentOutput::Attack { report, .. } => report.found_key.is_some(),
        ExperimentOutput::Compare { .. } => true,
    });

    let content = match args.format {
        OutputFormat::Json => {
            if args.config.is_some() {
                to_json_string(&outputs)
            } else {
                to_json_string(&outputs[0])
            }
        }
        OutputFormat::Csv => {
            // Per-trial step/query counts; the aggregates and predictions
            // live in the JSON format.
            let mut s = String::from("experiment,trial,steps_or_queries\n");
            for (idx, output) in outputs.iter().enumerate() {
                let reports: Vec<(&str, &AttackReport)> = match output {
                    ExperimentOutput::Attack { report, .. } => vec![("attack", report)],
                    ExperimentOutput::Compare { speedup, .. } => vec![
                        ("classical", &speedup.classical),
                        ("grover", &speedup.quantum),
                    ],
                };
                for (label, report) in reports {
                    for (trial, &steps) in
                        report.steps_or_queries_per_trial.iter().enumerate()
                    {
                        let _ = writeln!(s, "{idx}-{label},{trial},{steps}");
                    }
                }
            }
            s
        }
    };
    emit(&args.output, &content).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(all_found)
}
