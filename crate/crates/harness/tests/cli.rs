use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use numrad_core::block_bounds::BlockPartition;
use numrad_core::ComplexMatrix;
use serde_json::{json, Value};
use tempfile::TempDir;

fn numrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numrad")).args(args).env_remove("NUMRAD_SEED").output().expect("spawn numrad")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn small_suite(bounds: &[&str]) -> String {
    json!({
        "name": "small",
        "bounds": bounds,
        "trials_per": 5,
        "generators": [
            { "kind": "hermitian", "dim": 3, "seed": 7, "scale": 3.0 },
            { "kind": "ginibre", "dim": 2, "seed": 8 }
        ]
    })
    .to_string()
}

#[test]
fn compute_reports_the_shift_quantities() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "shift.json", &ComplexMatrix::shift(2).to_json());
    let w = stdout_json(&numrad(&["compute", arg(&m)]));
    assert!((w["w"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-9, "{w}");
    let norm = stdout_json(&numrad(&["compute", arg(&m), "--what", "norm"]));
    assert!((norm["norm"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let r = stdout_json(&numrad(&["compute", arg(&m), "--what", "r"]));
    assert!(r["r"].as_f64().unwrap().abs() < 1e-6);
    let aluthge = stdout_json(&numrad(&["compute", arg(&m), "--what", "aluthge"]));
    assert!(aluthge["w"]["value"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn check_evaluates_single_and_pair_bounds() {
    let dir = TempDir::new().unwrap();
    let two = write(&dir, "two.json", &ComplexMatrix::identity(2).scale(2.0).to_json());
    let rec = stdout_json(&numrad(&["check", arg(&two), "--bound", "eq1.5.as_printed"]));
    assert!((rec["lhs"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert!((rec["rhs"].as_f64().unwrap() - 3.0).abs() < 1e-12);

    let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
    let pair = json!({ "a": a, "b": ComplexMatrix::identity(2) });
    let pair = write(&dir, "pair.json", &pair.to_string());
    let out = numrad(&["check", arg(&pair), "--bound", "eq1.1.upper"]);
    assert_eq!(out.status.code(), Some(2), "single-matrix bound on a pair must be refused");

    let unknown = numrad(&["check", arg(&two), "--bound", "no.such.bound"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("no.such.bound"));
}

#[test]
fn block_prints_pinch_and_record() {
    let dir = TempDir::new().unwrap();
    let j = ComplexMatrix::shift(2);
    let z = ComplexMatrix::zeros(2, 2);
    let part = BlockPartition::new(vec![2, 2], vec![vec![z.clone(), j.clone()], vec![j, z]]).unwrap();
    let path = write(&dir, "part.json", &part.to_json());
    let out = stdout_json(&numrad(&["block", arg(&path), "--scheme", "a"]));
    assert!((out["pinch"][0][1].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert!((out["record"]["rhs"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert_eq!(numrad(&["block", arg(&path), "--scheme", "c"]).status.code(), Some(2));
    assert!(numrad(&["block", arg(&path), "--scheme", "c", "--alpha", "0.5"]).status.success());
}

#[test]
fn sweep_exit_codes_follow_unexpected_violations() {
    let dir = TempDir::new().unwrap();
    let ok = write(&dir, "ok.json", &small_suite(&["eq1.1.lower", "eq1.1.upper", "eq1.5.as_printed"]));
    let out = numrad(&["sweep", "--config", arg(&ok)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("ok.report.json")).unwrap()).unwrap();
    assert_eq!(report["unexpected_violations"], 0);
    assert!(report["expected_violations"].as_u64().unwrap() > 0);
    let csv = fs::read_to_string(dir.path().join("ok.tightness.csv")).unwrap();
    assert!(csv.starts_with("bound_id,max_tightness,trials,generator,dim,seed"));

    let bad = write(&dir, "bad.json", &small_suite(&["eq1.1.lower", "no.such.bound"]));
    assert_eq!(numrad(&["sweep", "--config", arg(&bad)]).status.code(), Some(2));
}

#[test]
fn seed_environment_variable_overrides_config_seeds() {
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "s.json", &small_suite(&["eq1.1.upper"]));
    let run = |seed: Option<&str>, report: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_numrad"));
        cmd.args(["sweep", "--config", arg(&config), "--report", report, "--table", arg(&dir.path().join("t.csv"))]);
        match seed {
            Some(s) => cmd.env("NUMRAD_SEED", s),
            None => cmd.env_remove("NUMRAD_SEED"),
        };
        assert!(cmd.output().unwrap().status.success());
        fs::read_to_string(report).unwrap()
    };
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let base = run(None, &path("base.json"));
    let first = run(Some("42"), &path("first.json"));
    let again = run(Some("42"), &path("again.json"));
    let other = run(Some("43"), &path("other.json"));
    assert_eq!(first, again);
    assert_ne!(first, base);
    assert_ne!(first, other);
}
