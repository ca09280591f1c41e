//! Suite configuration, the sweep loop, and report emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use numrad_core::random::mix;
use numrad_core::{BoundRecord, TolerancePolicy};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::generate::{generate, GeneratorSpec};
use crate::registry::{evaluate, lookup, BoundInfo, BoundParams, Context, Outcome};

/// Environment variable that reseeds every generator of a suite.
pub const SEED_ENV: &str = "NUMRAD_SEED";

fn default_trials() -> usize {
    100
}

/// A sweep as read from `--config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default)]
    pub name: String,
    pub bounds: Vec<String>,
    pub generators: Vec<GeneratorSpec>,
    /// Trials per generator unless the generator sets its own.
    #[serde(default = "default_trials")]
    pub trials_per: usize,
    #[serde(default)]
    pub tolerance: TolerancePolicy,
}

impl SuiteConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| HarnessError::Input(format!("suite config: {e}")))
    }

    /// Replace each generator seed with `mix(seed, index)`.
    pub fn reseed(&mut self, seed: u64) {
        for (i, g) in self.generators.iter_mut().enumerate() {
            g.seed = mix(seed, i as u64);
        }
    }

    /// Apply `NUMRAD_SEED` if it is set.
    pub fn apply_env_seed(&mut self) -> Result<Option<u64>> {
        match std::env::var(SEED_ENV) {
            Ok(raw) => {
                let seed = raw.trim().parse().map_err(|_| HarnessError::Input(format!("{SEED_ENV}={raw:?} is not a u64")))?;
                self.reseed(seed);
                Ok(Some(seed))
            }
            Err(_) => Ok(None),
        }
    }

    /// Records each bound will receive, in bound order.
    pub fn planned_trials(&self) -> Result<Vec<(String, usize)>> {
        self.bounds
            .iter()
            .map(|id| {
                let info = lookup(id)?;
                let n = self.generators.iter().filter(|g| info.accepts(g.kind)).map(|g| g.trials.unwrap_or(self.trials_per)).sum();
                Ok((id.clone(), n))
            })
            .collect()
    }
}

/// Enough to regenerate the offending instance: `generate(&generator)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialDescriptor {
    /// The generator with its per-trial seed.
    pub generator: GeneratorSpec,
    pub generator_index: usize,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundAggregate {
    pub bound_id: String,
    /// `holds + expected_violations + unexpected_violations`.
    pub trials: usize,
    pub holds: usize,
    pub expected_violations: usize,
    pub unexpected_violations: usize,
    /// Holding records with `lhs > rhs`, i.e. inside the tolerance band.
    pub near_misses: usize,
    /// Instances on which the hypotheses were not met; not counted as trials.
    pub skipped: usize,
    pub max_tightness: f64,
    pub argmax: Option<TrialDescriptor>,
    pub mean_slack: f64,
    #[serde(skip)]
    slack_sum: f64,
}

impl BoundAggregate {
    fn new(bound_id: &str) -> Self {
        Self {
            bound_id: bound_id.to_string(),
            trials: 0,
            holds: 0,
            expected_violations: 0,
            unexpected_violations: 0,
            near_misses: 0,
            skipped: 0,
            max_tightness: 0.0,
            argmax: None,
            mean_slack: 0.0,
            slack_sum: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Holds,
    ExpectedViolation,
    UnexpectedViolation,
}

/// Full record and instance of an unexpected violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationDump {
    pub descriptor: TrialDescriptor,
    pub record: BoundRecord,
    pub instance: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SuiteConfig,
    pub total_trials: usize,
    pub expected_violations: usize,
    pub unexpected_violations: usize,
    pub bounds: Vec<BoundAggregate>,
    pub violations: Vec<ViolationDump>,
}

impl SweepReport {
    pub fn aggregate(&self, bound_id: &str) -> Option<&BoundAggregate> {
        self.bounds.iter().find(|b| b.bound_id == bound_id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization cannot fail");
        s.push('\n');
        s
    }
}

pub fn classify(info: &BoundInfo, record: &BoundRecord, policy: &TolerancePolicy) -> Classification {
    if record.holds_with(policy) {
        Classification::Holds
    } else if info.expected_failure {
        Classification::ExpectedViolation
    } else {
        Classification::UnexpectedViolation
    }
}

/// Sweep every bound over every compatible generator.
pub fn run_suite(generators: &[GeneratorSpec], bounds: &[String], trials_per: usize, policy: TolerancePolicy) -> Result<SweepReport> {
    run_config(&SuiteConfig { name: String::new(), bounds: bounds.to_vec(), generators: generators.to_vec(), trials_per, tolerance: policy })
}

pub fn run_config(config: &SuiteConfig) -> Result<SweepReport> {
    let infos: Vec<&BoundInfo> = config.bounds.iter().map(|id| lookup(id)).collect::<Result<_>>()?;
    for g in &config.generators {
        g.validate()?;
    }
    for info in &infos {
        if !config.generators.iter().any(|g| info.accepts(g.kind)) {
            return Err(HarnessError::ArityMismatch { bound_id: info.id.to_string(), needs: info.requirement() });
        }
    }
    let policy = config.tolerance;
    let mut aggregates: Vec<BoundAggregate> = infos.iter().map(|i| BoundAggregate::new(i.id)).collect();
    let mut violations = Vec::new();
    let params = BoundParams::default();

    for (gi, gen) in config.generators.iter().enumerate() {
        let applicable: Vec<usize> = (0..infos.len()).filter(|&k| infos[k].accepts(gen.kind)).collect();
        if applicable.is_empty() {
            continue;
        }
        for trial in 0..gen.trials.unwrap_or(config.trials_per) {
            let trial_seed = mix(gen.seed, trial as u64);
            let spec = GeneratorSpec { trials: None, ..gen.reseeded(trial_seed) };
            let instance = generate(&spec)?;
            let ctx = Context::new(&instance)?;
            let descriptor = TrialDescriptor { generator: spec, generator_index: gi, trial };
            for &k in &applicable {
                let agg = &mut aggregates[k];
                let records = match evaluate(&ctx, infos[k], &params, trial_seed)? {
                    Outcome::Records(r) => r,
                    Outcome::NotApplicable(_) => {
                        agg.skipped += 1;
                        continue;
                    }
                };
                for record in records {
                    if !record.preconditions_met {
                        agg.skipped += 1;
                        continue;
                    }
                    agg.trials += 1;
                    agg.slack_sum += record.slack;
                    if record.tightness > agg.max_tightness || agg.argmax.is_none() {
                        agg.max_tightness = record.tightness;
                        agg.argmax = Some(descriptor.clone());
                    }
                    match classify(infos[k], &record, &policy) {
                        Classification::Holds => {
                            agg.holds += 1;
                            if record.lhs > record.rhs {
                                agg.near_misses += 1;
                            }
                        }
                        Classification::ExpectedViolation => agg.expected_violations += 1,
                        Classification::UnexpectedViolation => {
                            agg.unexpected_violations += 1;
                            violations.push(ViolationDump { descriptor: descriptor.clone(), record, instance: instance.to_json() });
                        }
                    }
                }
            }
        }
    }

    for agg in &mut aggregates {
        agg.mean_slack = if agg.trials == 0 { 0.0 } else { agg.slack_sum / agg.trials as f64 };
    }
    Ok(SweepReport {
        config: config.clone(),
        total_trials: aggregates.iter().map(|a| a.trials).sum(),
        expected_violations: aggregates.iter().map(|a| a.expected_violations).sum(),
        unexpected_violations: aggregates.iter().map(|a| a.unexpected_violations).sum(),
        bounds: aggregates,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub bound_id: String,
    pub max_tightness: f64,
    pub trials: usize,
    pub argmax: Option<TrialDescriptor>,
}

/// Bounds by descending `max_tightness`, ties broken by id.
pub fn tightness_table(report: &SweepReport) -> Vec<TightnessRow> {
    let mut rows: Vec<TightnessRow> = report
        .bounds
        .iter()
        .map(|a| TightnessRow { bound_id: a.bound_id.clone(), max_tightness: a.max_tightness, trials: a.trials, argmax: a.argmax.clone() })
        .collect();
    rows.sort_by(|x, y| y.max_tightness.total_cmp(&x.max_tightness).then_with(|| x.bound_id.cmp(&y.bound_id)));
    rows
}

pub fn tightness_csv(rows: &[TightnessRow]) -> String {
    let mut out = String::from("bound_id,max_tightness,trials,generator,dim,seed\n");
    for r in rows {
        let (kind, dim, seed) = match &r.argmax {
            Some(d) => (d.generator.kind.as_str(), d.generator.dim.to_string(), d.generator.seed.to_string()),
            None => ("", String::new(), String::new()),
        };
        let _ = writeln!(out, "{},{:.12e},{},{},{},{}", r.bound_id, r.max_tightness, r.trials, kind, dim, seed);
    }
    out
}

/// Trials per bound grouped by generator kind, for coverage checks.
pub fn coverage(config: &SuiteConfig) -> Result<BTreeMap<String, BTreeMap<&'static str, usize>>> {
    let mut out: BTreeMap<String, BTreeMap<&'static str, usize>> = BTreeMap::new();
    for id in &config.bounds {
        let info = lookup(id)?;
        let entry = out.entry(id.clone()).or_default();
        for g in config.generators.iter().filter(|g| info.accepts(g.kind)) {
            *entry.entry(g.kind.as_str()).or_default() += g.trials.unwrap_or(config.trials_per);
        }
    }
    Ok(out)
}
