//! End-to-end acceptance suite. Runs every criterion, prints one line per
//! criterion, and fails if any of them fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use numrad_core::block_bounds::{PartitionProfile, PinchScheme, SchemeId};
use numrad_core::product_bounds::{block_positivity_check, thm1_bounds, Pair, ProductBoundInput};
use numrad_core::random::{mix, SeededRng};
use numrad_core::scalar_bounds::{eq11_sandwich, kittaneh2003, kittaneh2005, yamazaki};
use numrad_core::matrix::inner;
use numrad_core::{absolute_value, hermitian_eigen, ComplexMatrix, PowerFunction, Profile, TolerancePolicy};
use numrad_harness::registry::{evaluate, lookup, BoundParams, Context, Outcome};
use numrad_harness::sweep::{SuiteConfig, SweepReport};
use numrad_harness::{all_bound_ids, generate, GeneratorKind, GeneratorSpec, Instance};
use numrad_oracle::{dense_grid_radius, hermitian_eigenvalues};

type Verdict = Result<String, String>;

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn dense(t: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..t.rows()).map(|i| (0..t.cols()).map(|j| t[(i, j)]).collect()).collect()
}

fn within(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{label} = {got:.15}, expected {want} ± {tol:e}"))
    }
}

fn in_time(started: Instant, limit: Duration) -> Result<(), String> {
    let took = started.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:.1?}, limit {limit:?}"))
    }
}

/// The 2×2 shift attains every classical bound exactly.
fn sharp_cases() -> Verdict {
    let started = Instant::now();
    let p = Profile::new(&ComplexMatrix::shift(2)).map_err(|e| e.to_string())?;
    let w = p.radius().map_err(|e| e.to_string())?;
    within("w(S)", w, 0.5, 1e-9)?;
    let k = kittaneh2003(&p).map_err(|e| e.to_string())?;
    within("eq1.2 rhs", k.rhs, 0.5, 1e-9)?;
    within("eq1.2 tightness", k.tightness, 1.0, 1e-9)?;
    let (lower, _) = kittaneh2005(&p).map_err(|e| e.to_string())?;
    within("eq1.3 lower bound", lower.lhs, 0.25, 1e-9)?;
    within("eq1.3 lower tightness", lower.tightness, 1.0, 1e-9)?;
    let (first, _) = yamazaki(&p).map_err(|e| e.to_string())?;
    within("w(Aluthge)", p.aluthge_radius().map_err(|e| e.to_string())?, 0.0, 1e-12)?;
    within("eq1.4 first bound", first.rhs, 0.5, 1e-9)?;
    in_time(started, Duration::from_secs(1))?;
    Ok(format!("w = {w:.12}, all four values sharp, {:.1?}", started.elapsed()))
}

/// Certified solver against a 10⁶-angle grid.
fn oracle_equivalence() -> Verdict {
    let started = Instant::now();
    let mut rng = SeededRng::new(0xACCE);
    let mut worst = 0.0f64;
    for k in 0..200 {
        let n = 1 + k % 6;
        let t = rng.ginibre(n, n);
        let fast = numrad_core::numerical_radius_default(&t).map_err(|e| e.to_string())?.value;
        let grid = dense_grid_radius(&dense(&t), 1_000_000);
        worst = worst.max((fast - grid).abs());
        if (fast - grid).abs() > 1e-7 {
            return Err(format!("matrix {k} (n = {n}): solver {fast} vs grid {grid}"));
        }
    }
    in_time(started, Duration::from_secs(120))?;
    Ok(format!("200 matrices, worst gap {worst:.2e}, {:.1?}", started.elapsed()))
}

fn load_config(name: &str) -> SuiteConfig {
    let path = workspace_root().join("configs").join(name);
    SuiteConfig::from_json(&std::fs::read_to_string(&path).expect("config file")).expect("config parses")
}

/// Runs the CLI on the default suite; returns the report bytes and runtime.
fn cli_sweep(dir: &Path, tag: &str) -> Result<(Vec<u8>, Duration), String> {
    let report = dir.join(format!("{tag}.json"));
    let table = dir.join(format!("{tag}.csv"));
    let started = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_numrad"))
        .arg("sweep")
        .arg("--config")
        .arg(workspace_root().join("configs/default.json"))
        .arg("--report")
        .arg(&report)
        .arg("--table")
        .arg(&table)
        .env_remove("NUMRAD_SEED")
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    let took = started.elapsed();
    // A nonzero exit only means unexpected violations; the report says which.
    if !matches!(status.code(), Some(0 | 1)) {
        return Err(format!("sweep exited with {status}"));
    }
    Ok((std::fs::read(&report).map_err(|e| e.to_string())?, took))
}

fn full_suite_soundness(report: &SweepReport, took: Duration) -> Verdict {
    let config = &report.config;
    let mut missing: Vec<&str> = all_bound_ids().into_iter().filter(|id| !config.bounds.iter().any(|b| b == id)).collect();
    if !missing.is_empty() {
        missing.sort_unstable();
        return Err(format!("suite does not cover {missing:?}"));
    }
    let dims: Vec<usize> = config.generators.iter().filter(|g| g.kind != GeneratorKind::BlockPartition).map(|g| g.dim).collect();
    if (2..=8).any(|n| !dims.contains(&n)) || dims.iter().any(|n| !(2..=8).contains(n)) {
        return Err(format!("dimensions {dims:?} do not span 2..=8"));
    }
    for agg in &report.bounds {
        if agg.trials < 500 {
            return Err(format!("{} ran only {} trials", agg.bound_id, agg.trials));
        }
        if agg.bound_id != "eq1.5.as_printed" && agg.unexpected_violations > 0 {
            return Err(format!("{}: {} unexpected violations", agg.bound_id, agg.unexpected_violations));
        }
        if agg.bound_id != "eq1.5.as_printed" && agg.max_tightness > 1.0 + 1e-9 {
            return Err(format!("{}: max tightness {}", agg.bound_id, agg.max_tightness));
        }
    }
    in_time(Instant::now() - took, Duration::from_secs(600))?;
    Ok(format!("{} bounds, {} records, 0 unexpected violations, {took:.1?}", report.bounds.len(), report.total_trials))
}

fn typo_detection() -> Verdict {
    let report = numrad_harness::run_config(&load_config("typo.json")).map_err(|e| e.to_string())?;
    let printed = report.aggregate("eq1.5.as_printed").ok_or("as_printed missing")?;
    let fixed = report.aggregate("eq1.5.squared_norm").ok_or("squared_norm missing")?;
    if printed.expected_violations == 0 {
        return Err("printed form never failed on 3×-scaled Hermitian matrices".into());
    }
    if fixed.expected_violations + fixed.unexpected_violations > 0 {
        return Err(format!("squared-norm form failed {} times", fixed.expected_violations + fixed.unexpected_violations));
    }
    Ok(format!("printed form fails {}/{}, squared-norm form 0/{}", printed.expected_violations, printed.trials, fixed.trials))
}

/// Largest eigenvalue magnitude of a real symmetric matrix, via the oracle.
fn symmetric_radius(p: &[Vec<f64>]) -> f64 {
    let h: Vec<Vec<Complex64>> = p.iter().map(|row| row.iter().map(|&x| x.into()).collect()).collect();
    hermitian_eigenvalues(&h).into_iter().fold(0.0, |m, l| m.max(l.abs()))
}

fn block_hierarchy() -> Verdict {
    let mut worst_slack = f64::INFINITY;
    let mut worst_t3 = 0.0f64;
    let mut worst_closed = 0.0f64;
    // scheme -> (count, worst partition, worst excess)
    let mut violations: std::collections::BTreeMap<&str, (usize, u64, f64)> = Default::default();
    for k in 0..500u64 {
        let blocks = 2 + (k % 2) as usize;
        let diagonal = k % 5 == 0;
        let mut spec = GeneratorSpec::new(GeneratorKind::BlockPartition, blocks, mix(0xB10C, k));
        if diagonal {
            spec = spec.block_diagonal();
        }
        let Instance::Partition(partition) = generate(&spec).map_err(|e| e.to_string())? else { unreachable!() };
        let profile = PartitionProfile::with_default_tolerance(&partition).map_err(|e| e.to_string())?;
        for id in SchemeId::ALL {
            let scheme = if id.needs_power_functions() { PinchScheme::with_alpha(id, 0.3) } else { Ok(PinchScheme::new(id)) }
                .map_err(|e| e.to_string())?;
            let record = profile.block_bound(&scheme).map_err(|e| e.to_string())?;
            worst_slack = worst_slack.min(record.slack);
            if record.lhs > record.rhs + 1e-8 {
                let entry = violations.entry(id.as_str()).or_insert((0, k, 0.0));
                entry.0 += 1;
                if record.lhs - record.rhs > entry.2 {
                    *entry = (entry.0, k, record.lhs - record.rhs);
                }
            }
            if diagonal && id == SchemeId::T3 {
                worst_t3 = worst_t3.max(record.slack);
                if record.slack > 2e-9 {
                    return Err(format!("t3 slack {} on block-diagonal partition {k}", record.slack));
                }
            }
        }
        if blocks == 2 {
            let closed = profile.two_by_two_closed_form().map_err(|e| e.to_string())?;
            let (w11, w22) = (profile.radius(0, 0).unwrap(), profile.radius(1, 1).unwrap());
            let off = 0.5 * (profile.radius(0, 1).unwrap() + profile.radius(1, 0).unwrap());
            let sym = symmetric_radius(&[vec![w11, off], vec![off, w22]]);
            worst_closed = worst_closed.max((closed.rhs - sym).abs());
            if (closed.rhs - sym).abs() > 1e-10 {
                return Err(format!("2×2 closed form {} vs r(symmetrized pinch) {sym}", closed.rhs));
            }
        }
    }
    if !violations.is_empty() {
        let parts: Vec<String> =
            violations.iter().map(|(id, (n, k, gap))| format!("scheme {id} violated on {n}/500, worst partition {k} by {gap:.3e}")).collect();
        return Err(parts.join("; "));
    }
    Ok(format!("500 partitions; min slack {worst_slack:.2e}, t3 block-diagonal slack ≤ {worst_t3:.1e}, closed form gap ≤ {worst_closed:.1e}"))
}

/// Instances drawn exactly as the default sweep draws them.
fn corpus(kinds: &[GeneratorKind]) -> Vec<Instance> {
    let config = load_config("default.json");
    let mut out = Vec::new();
    for g in config.generators.iter().filter(|g| kinds.contains(&g.kind)) {
        for trial in 0..g.trials.unwrap_or(config.trials_per) {
            let spec = GeneratorSpec { trials: None, ..g.reseeded(mix(g.seed, trial as u64)) };
            out.push(generate(&spec).expect("corpus instance"));
        }
    }
    out
}

fn chain_orderings() -> Verdict {
    use GeneratorKind::*;
    let tol = 1e-8;
    let mut singles = 0;
    for inst in corpus(&[Ginibre, Hermitian, Positive, Unitary, Normal, NilpotentShift]) {
        let Instance::Single(t) = inst else { unreachable!() };
        let p = Profile::new(&t).map_err(|e| e.to_string())?;
        let (first, second) = yamazaki(&p).map_err(|e| e.to_string())?;
        let w = p.radius().unwrap();
        if !(w <= first.rhs + tol && first.rhs <= second.rhs + tol) {
            return Err(format!("eq1.4 chain broken: {w} / {} / {}", first.rhs, second.rhs));
        }
        let rhs = kittaneh2003(&p).unwrap().rhs;
        if rhs > p.norm().unwrap() + tol {
            return Err(format!("eq1.2 rhs {rhs} exceeds ‖T‖ = {}", p.norm().unwrap()));
        }
        let (lower, upper) = eq11_sandwich(&p).unwrap();
        if !(lower.lhs <= w + tol && w <= upper.rhs + tol) {
            return Err("eq1.1 sandwich broken".into());
        }
        singles += 1;
    }
    let mut pairs = 0;
    for inst in corpus(&[IntertwinedPair, CommutingPair]) {
        let Instance::Pair(a, b) = inst else { unreachable!() };
        let pair = Pair::new(&a, &b).map_err(|e| e.to_string())?;
        for alpha in [0.25, 0.5, 0.75] {
            let (f, g) = PowerFunction::complementary_pair(alpha).unwrap();
            let input = ProductBoundInput::new(&pair, f, g, 1.0, None).unwrap();
            let (first, second) = thm1_bounds(&input).map_err(|e| e.to_string())?;
            if !(first.lhs <= first.rhs + tol && first.rhs <= second.rhs + tol) {
                return Err(format!("eq2.1 chain broken: {} / {} / {}", first.lhs, first.rhs, second.rhs));
            }
        }
        pairs += 1;
    }
    Ok(format!("{singles} single-matrix and {pairs} pair instances"))
}

/// `count` seeded evaluations of one bound on one generator family.
fn lemma_run(id: &str, kind: GeneratorKind, count: usize, params: BoundParams) -> Result<usize, String> {
    let info = lookup(id).map_err(|e| e.to_string())?;
    let policy = TolerancePolicy::default();
    let mut records = 0;
    for k in 0..count {
        let n = 2 + k % 5;
        let seed = mix(numrad_core::random::hash_str(id), k as u64);
        let inst = generate(&GeneratorSpec::new(kind, n, seed)).map_err(|e| e.to_string())?;
        let ctx = Context::new(&inst).map_err(|e| e.to_string())?;
        let Outcome::Records(rs) = evaluate(&ctx, info, &params, seed).map_err(|e| e.to_string())? else {
            return Err(format!("{id} not applicable to instance {k}"));
        };
        for r in rs {
            if !r.preconditions_met {
                return Err(format!("{id}: preconditions unmet on instance {k}: {}", r.notes));
            }
            if !r.holds_with(&policy) {
                return Err(format!("{id} violated on instance {k}: {} > {}", r.lhs, r.rhs));
            }
            records += 1;
        }
    }
    Ok(records)
}

/// Positive blocks pass every sampled pair; for a non-positive block the
/// negative eigenvector `(x, y)` of `[[A, Cᴴ], [C, B]]` must violate
/// `|⟨Cx,y⟩|² ≤ ⟨Ax,x⟩⟨By,y⟩`.
fn positivity_bidirectional(count: usize) -> Result<usize, String> {
    let mut rng = SeededRng::new(0x1E44);
    let mut non_positive = 0;
    for k in 0..count {
        let n = 1 + k % 4;
        let t = rng.ginibre(n, n);
        let (a, b) = (absolute_value(&t).unwrap(), absolute_value(&t.adjoint()).unwrap());
        // [[|T|, cTᴴ], [cT, |Tᴴ|]] is positive for |c| ≤ 1 and generically not beyond.
        let c = if k % 2 == 0 { 1.0 } else { rng.uniform_in(1.05, 2.0) };
        let ct = t.scale(c);
        let check = block_positivity_check(&a, &b, &ct, k as u64).map_err(|e| e.to_string())?;
        if check.positive {
            if !check.schwarz_all_samples {
                return Err(format!("instance {k}: positive block failed a sample (ratio {})", check.worst_ratio));
            }
            continue;
        }
        non_positive += 1;
        let block = ComplexMatrix::from_blocks(&[vec![a.clone(), ct.adjoint()], vec![ct.clone(), b.clone()]]);
        let v = hermitian_eigen(&block).unwrap().vectors.column(0);
        let (x, y) = (&v[..n], &v[n..]);
        let lhs = inner(&ct.mul_vec(x), y).norm_sqr();
        let rhs = a.quadratic_form(x).re * b.quadratic_form(y).re;
        if lhs <= rhs {
            return Err(format!("instance {k}: non-positive block but its eigenvector satisfies the inequality"));
        }
    }
    Ok(non_positive)
}

fn lemma_suites() -> Verdict {
    use GeneratorKind::*;
    let mut summary = Vec::new();
    let runs: [(&str, GeneratorKind, BoundParams); 8] = [
        ("eq2.4", Ginibre, BoundParams::default()),
        ("lem5", IntertwinedPair, BoundParams::default()),
        ("buzano.key", Ginibre, BoundParams::default()),
        ("fact1", ContractionPair, BoundParams::default()),
        ("fact2", ContractionPair, BoundParams::default()),
        ("fact3", IntertwinedPair, BoundParams::default()),
        ("mccarty", Positive, BoundParams::default()),
        ("pmi", Ginibre, BoundParams::default()),
    ];
    for (id, kind, params) in runs {
        let n = lemma_run(id, kind, 1000, params)?;
        summary.push(format!("{id} {n}"));
    }
    for p in [2.0, 3.0, 4.0] {
        for id in ["lem7.refined", "lem7.outer"] {
            lemma_run(id, Positive, 1000, BoundParams { p: Some(p), ..Default::default() })?;
        }
    }
    summary.push("lem7 p=2,3,4 ×1000".into());
    let non_positive = positivity_bidirectional(1000)?;
    summary.push(format!("lem4 1000 ({non_positive} non-positive blocks refuted)"));
    Ok(summary.join(", "))
}

fn determinism(first: &[u8], second: &[u8]) -> Verdict {
    if first == second {
        Ok(format!("two CLI runs, {} identical bytes", first.len()))
    } else {
        let at = first.iter().zip(second).position(|(a, b)| a != b).unwrap_or(first.len().min(second.len()));
        Err(format!("reports differ at byte {at}"))
    }
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut failures = 0;
    let mut report = |n: usize, name: &str, verdict: Verdict| {
        match &verdict {
            Ok(detail) => println!("criterion {n} [{name}]: PASS ({detail})"),
            Err(why) => {
                failures += 1;
                println!("criterion {n} [{name}]: FAIL ({why})");
            }
        }
    };

    report(1, "sharp cases", sharp_cases());
    report(2, "oracle equivalence", oracle_equivalence());
    let sweeps = cli_sweep(dir.path(), "first").and_then(|a| cli_sweep(dir.path(), "second").map(|b| (a, b)));
    match &sweeps {
        Ok(((bytes, took), _)) => {
            let parsed: Result<SweepReport, String> = serde_json::from_slice(bytes).map_err(|e| e.to_string());
            report(3, "full-suite soundness", parsed.and_then(|r| full_suite_soundness(&r, *took)));
        }
        Err(e) => report(3, "full-suite soundness", Err(e.clone())),
    }
    report(4, "typo detection", typo_detection());
    report(5, "block hierarchy", block_hierarchy());
    report(6, "chain orderings", chain_orderings());
    report(7, "lemma suites", lemma_suites());
    match &sweeps {
        Ok(((a, _), (b, _))) => report(8, "determinism", determinism(a, b)),
        Err(e) => report(8, "determinism", Err(e.clone())),
    }

    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
