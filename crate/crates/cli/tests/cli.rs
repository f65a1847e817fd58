use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ercd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ercd"))
        .args(args)
        .output()
        .expect("spawn ercd")
}

fn run_json(args: &[&str], dir: &Path) -> (i32, Value) {
    let out = dir.join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let out_s = out.to_str().unwrap().to_owned();
    full.extend(["--out", &out_s]);
    let o = ercd(&full);
    let code = o.status.code().unwrap();
    let text = std::fs::read_to_string(&out).unwrap_or_else(|_| panic!("no report; stderr: {}", String::from_utf8_lossy(&o.stderr)));
    (code, serde_json::from_str(&text).unwrap())
}

fn suite<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == name)
        .unwrap_or_else(|| panic!("suite {name} missing"))
}

#[test]
fn verify_algebra_default_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_json(&["verify-algebra"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["pass"], true);
    assert_eq!(suite(&r, "anticomm")["relations"].as_array().unwrap().len(), 28);
    assert_eq!(suite(&r, "so8")["relations"].as_array().unwrap().len(), 4096);
}

#[test]
fn unattainable_tolerance_fails_with_listing() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_json(&["verify-algebra", "--tau-alg", "1e-30"], dir.path());
    assert_eq!(code, 1);
    assert_eq!(r["pass"], false);
    let failed: Vec<&Value> = r["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["relations"].as_array().unwrap())
        .filter(|x| x["pass"] == false)
        .collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|x| x["residual"].as_f64().unwrap() > 1e-30));
}

#[test]
fn suite_filter() {
    let dir = tempfile::tempdir().unwrap();
    let (_, r) = run_json(&["verify-algebra", "--suite", "so8"], dir.path());
    let suites = r["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["name"], "so8");
}

#[test]
fn duality_commuting_square() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_json(&["verify-duality", "--seed", "42"], dir.path());
    assert_eq!(code, 0);
    let sq = &suite(&r, "square")["relations"][0];
    assert!(sq["residual"].as_f64().unwrap() <= 1e-11);
    assert_eq!(r["config"]["seed"], 42);
}

#[test]
fn single_mode_at_rest() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_json(&["verify-duality", "--modes", "single:k=0"], dir.path());
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["config"]["modes"], "single:k=0");
}

#[test]
fn missing_output_dir_is_io_error() {
    let o = ercd(&["verify-algebra", "--out", "/nonexistent-dir/x/report.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"counts": [8, 9, 9]}"#).unwrap();
    let o = ercd(&["verify-algebra", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::write(&cfg, r#"{"no_such_field": 1}"#).unwrap();
    let o = ercd(&["verify-algebra", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = ercd(&["verify-algebra", "--mass", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn command_line_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 7, "times": [0.0, 1.0], "sets": 2}"#).unwrap();
    let (code, r) = run_json(&["charges", "--config", cfg.to_str().unwrap(), "--seed", "9"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(r["config"]["seed"], 9);
    assert_eq!(r["config"]["times"], serde_json::json!([0.0, 1.0]));
}

#[test]
fn charges_default_and_bookkeeping() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_json(&["charges"], dir.path());
    assert_eq!(code, 0);
    let ch = suite(&r, "conservation")["charges"].as_array().unwrap();
    assert_eq!(ch.len(), 9);
    assert!(ch.iter().all(|c| c["max_drift"].as_f64().unwrap() <= 1e-10));
    assert_eq!(suite(&r, "bookkeeping")["data"].as_array().unwrap().len(), 44);
}

#[test]
fn two_sample_drift() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_json(&["charges", "--times", "0,10", "--suite", "conservation"], dir.path());
    assert_eq!(code, 0);
    for c in suite(&r, "conservation")["charges"].as_array().unwrap() {
        assert_eq!(c["times"], serde_json::json!([0.0, 10.0]));
    }
}

#[test]
fn report_is_deterministic_apart_from_wall_time() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_s");
        serde_json::to_string(&v).unwrap()
    };
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let (_, a) = run_json(&["verify-duality", "--seed", "5"], d1.path());
    let (_, b) = run_json(&["verify-duality", "--seed", "5"], d2.path());
    let (a, b) = (strip(a), strip(b));
    // the echoed output path differs between the two runs
    assert_eq!(
        a.replace(d1.path().to_str().unwrap(), ""),
        b.replace(d2.path().to_str().unwrap(), "")
    );
}

#[test]
fn thread_cap_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = Command::new(env!("CARGO_BIN_EXE_ercd"))
        .args(["charges", "--suite", "conservation", "--sets", "2", "--out", out.to_str().unwrap()])
        .env("ERCD_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_ercd"))
        .args(["charges"])
        .env("ERCD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn poincare_casimir() {
    let dir = tempfile::tempdir().unwrap();
    let (code, r) = run_json(&["poincare", "--suite", "casimir"], dir.path());
    assert_eq!(code, 0);
    let rel = suite(&r, "casimir")["relations"].as_array().unwrap();
    assert!(rel[1]["residual"].as_f64().unwrap() <= 1e-12);
    assert!(rel[0]["residual"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn poincare_refinement_and_orderings() {
    let dir = tempfile::tempdir().unwrap();
    let (_, r) = run_json(
        &["poincare", "--refine", "1", "--ordering", "both", "--suite", "refinement", "--suite", "ordering"],
        dir.path(),
    );
    let rows = suite(&r, "refinement")["relations"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|x| x["residual"].as_f64().unwrap() >= 8.0));
    let variants = suite(&r, "ordering")["data"]["variants"].as_array().unwrap();
    assert_eq!(variants.len(), 2);
    assert_eq!(variants[0]["ordering"], "left");
    assert_eq!(variants[1]["ordering"], "right");
}

#[test]
fn stdout_report_without_out() {
    let o = ercd(&["verify-algebra", "--suite", "w"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "verify-algebra");
}
