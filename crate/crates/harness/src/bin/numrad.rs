use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use numrad_core::block_bounds::{BlockPartition, PartitionProfile, PinchScheme, SchemeId};
use numrad_core::linalg::{aluthge, min_gauge, operator_norm, spectral_radius};
use numrad_core::{default_tolerance, numerical_radius, ComplexMatrix};
use numrad_harness::registry::{evaluate, lookup, BoundParams, Context, Outcome};
use numrad_harness::sweep::{run_config, tightness_csv, tightness_table, SuiteConfig};
use numrad_harness::Instance;
use serde_json::json;

#[derive(Parser)]
#[command(name = "numrad", version, about = "Numerical radius computation and inequality sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    /// Numerical radius with its certificate.
    W,
    /// Spectral radius.
    R,
    /// Operator norm.
    Norm,
    /// Smallest singular value.
    Ell,
    /// Aluthge transform and its numerical radius.
    Aluthge,
}

#[derive(Subcommand)]
enum Command {
    /// Spectral quantities of one matrix.
    Compute {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "w")]
        what: Quantity,
        /// Numerical-radius tolerance; defaults to 1e-9·(1+‖T‖).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate one bound on a matrix, pair or partition file.
    Check {
        input: PathBuf,
        #[arg(long)]
        bound: String,
        /// Split exponent for f = t^α, g = t^(1−α).
        #[arg(long)]
        alpha: Option<f64>,
        /// First Hölder exponent (the second is its conjugate).
        #[arg(long)]
        holder: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        /// Seed for random test vectors and unset parameters.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a suite; exits nonzero if any bound is unexpectedly violated.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Report path; defaults to `<config stem>.report.json` next to the config.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Tightness table path; defaults to `<config stem>.tightness.csv`.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Pinch matrix and bound of a block partition.
    Block {
        partition: PathBuf,
        #[arg(long)]
        scheme: SchemeId,
        #[arg(long)]
        alpha: Option<f64>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn compute(path: &Path, what: Quantity, tol: Option<f64>) -> Result<()> {
    let t = ComplexMatrix::from_json(&read(path)?)?;
    let norm = operator_norm(&t)?;
    let tol = tol.unwrap_or_else(|| default_tolerance(norm));
    let out = match what {
        Quantity::W => json!({ "w": numerical_radius(&t, tol)? }),
        Quantity::R => json!({ "r": spectral_radius(&t)? }),
        Quantity::Norm => json!({ "norm": norm }),
        Quantity::Ell => json!({ "ell": min_gauge(&t)? }),
        Quantity::Aluthge => {
            let a = aluthge(&t)?;
            json!({ "aluthge": a, "w": numerical_radius(&a, tol)? })
        }
    };
    print_json(&out)
}

fn check(path: &Path, bound: &str, params: BoundParams, seed: u64) -> Result<()> {
    let info = lookup(bound)?;
    let instance = Instance::from_json(serde_json::from_str(&read(path)?)?)?;
    let ctx = Context::new(&instance)?;
    match evaluate(&ctx, info, &params, seed)? {
        Outcome::Records(records) if records.len() == 1 => print_json(&records[0]),
        Outcome::Records(records) => print_json(&records),
        Outcome::NotApplicable(why) => bail!("{bound} does not apply to this input: {why}"),
    }
}

fn sibling(config: &Path, suffix: &str) -> PathBuf {
    let stem = config.file_stem().and_then(|s| s.to_str()).unwrap_or("suite");
    config.with_file_name(format!("{stem}.{suffix}"))
}

fn sweep(config_path: &Path, report: Option<PathBuf>, table: Option<PathBuf>) -> Result<ExitCode> {
    let mut config = SuiteConfig::from_json(&read(config_path)?)?;
    if let Some(seed) = config.apply_env_seed()? {
        eprintln!("generator seeds overridden from NUMRAD_SEED={seed}");
    }
    let result = run_config(&config)?;
    let report_path = report.unwrap_or_else(|| sibling(config_path, "report.json"));
    let table_path = table.unwrap_or_else(|| sibling(config_path, "tightness.csv"));
    fs::write(&report_path, result.to_json()).with_context(|| format!("writing {}", report_path.display()))?;
    fs::write(&table_path, tightness_csv(&tightness_table(&result))).with_context(|| format!("writing {}", table_path.display()))?;

    for agg in &result.bounds {
        println!(
            "{:<20} trials {:>6}  holds {:>6}  expected {:>5}  unexpected {:>3}  max tightness {:.6}",
            agg.bound_id, agg.trials, agg.holds, agg.expected_violations, agg.unexpected_violations, agg.max_tightness
        );
    }
    println!("report: {}", report_path.display());
    println!("table:  {}", table_path.display());
    if result.unexpected_violations == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} unexpected violation(s)", result.unexpected_violations);
        Ok(ExitCode::FAILURE)
    }
}

fn block(path: &Path, scheme: SchemeId, alpha: Option<f64>) -> Result<()> {
    let partition = BlockPartition::from_json(&read(path)?)?;
    let profile = PartitionProfile::with_default_tolerance(&partition)?;
    let scheme = match (scheme.needs_power_functions(), alpha) {
        (true, Some(a)) => PinchScheme::with_alpha(scheme, a)?,
        (true, None) => bail!("scheme {scheme} needs --alpha"),
        (false, _) => PinchScheme::new(scheme),
    };
    let (pinch, _) = profile.pinch_bound(&scheme)?;
    print_json(&json!({ "pinch": pinch, "record": profile.block_bound(&scheme)? }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { matrix, what, tol } => compute(&matrix, what, tol).map(|()| ExitCode::SUCCESS),
        Command::Check { input, bound, alpha, holder, p, seed } => {
            check(&input, &bound, BoundParams { alpha, holder, p }, seed).map(|()| ExitCode::SUCCESS)
        }
        Command::Sweep { config, report, table } => sweep(&config, report, table),
        Command::Block { partition, scheme, alpha } => block(&partition, scheme, alpha).map(|()| ExitCode::SUCCESS),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
