use std::process::Command;

use elevenvertex_cli::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["elevenvertex"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid JSON")
}

fn check<'a>(doc: &'a Value, name: &str) -> &'a Value {
    doc["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_all_is_byte_identical_for_equal_seeds() {
    let (c1, a, _) = call(&["verify", "--suite", "all", "--seed", "7"]);
    let (c2, b, _) = call(&["verify", "--suite", "all", "--seed", "7"]);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(a, b);
    let doc = json(&a);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["passed"], true);
    let names: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in doc["checks"].as_array().unwrap() {
        for key in ["name", "anchor", "points_tested", "max_residual", "pass"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
        if c["exact"] == true {
            assert_eq!(c["max_residual"], "0");
        }
    }
}

#[test]
fn rmatrix_suite_composition() {
    let (code, out, _) = call(&["verify", "--suite", "rmatrix"]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    for name in ["rmatrix.cybe", "rmatrix.skew", "rmatrix.residue", "rmatrix.classical-limit", "rmatrix.eps-zero-classical"] {
        assert_eq!(check(&doc, name)["pass"], true, "{name}");
    }
    assert!(check(&doc, "rmatrix.cybe")["points_tested"].as_u64().unwrap() >= 20);
}

#[test]
fn corrupted_quadratic_entry_is_caught() {
    let (code, out, err) = call(&["verify", "--suite", "poisson", "--corrupt", "S11,S12"]);
    assert_eq!(code, EXIT_FAIL);
    let doc = json(&out);
    assert_eq!(check(&doc, "poisson.quadratic-eta")["pass"], false);
    assert_eq!(check(&doc, "poisson.linear")["pass"], true);
    assert!(err.contains("FAILED poisson.quadratic-eta"), "{err}");
}

#[test]
fn seed_changes_samples_but_not_verdict() {
    let (_, a, _) = call(&["verify", "--suite", "tops", "--seed", "1"]);
    let (_, b, _) = call(&["verify", "--suite", "tops", "--seed", "2"]);
    assert_ne!(a, b);
    assert_eq!(json(&a)["passed"], true);
    assert_eq!(json(&b)["passed"], true);
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(call(&["verify", "--suite", "nonsense"]).0, EXIT_USAGE);
    assert_eq!(call(&["simulate", "--model", "nonsense"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--bogus-flag"]).0, EXIT_USAGE);
    assert_eq!(call(&["simulate", "--model", "top", "--dt", "-1"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--suite", "poisson", "--corrupt", "S11"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"seeed": 3}"#).unwrap();
    assert_eq!(call(&["verify", "--config", bad.to_str().unwrap()]).0, EXIT_USAGE);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(call(&["verify", "--config", bad.to_str().unwrap()]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--config", "/nonexistent/config.json"]).0, EXIT_USAGE);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"seed": 11, "suite": "rmatrix", "points": 3}"#).unwrap();
    let (code, out, _) = call(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    assert_eq!((doc["seed"].as_u64(), doc["suite"].as_str()), (Some(11), Some("rmatrix")));
    let (_, out, _) = call(&["verify", "--config", cfg.to_str().unwrap(), "--seed", "12"]);
    assert_eq!(json(&out)["seed"], 12);
}

#[test]
fn simulate_top_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = call(&["simulate", "--model", "top", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    assert!(doc["monitors"]["casimir_drift_max"].as_f64().unwrap() < 1e-10);
    let on_disk = std::fs::read_to_string(dir.path().join("summary.json")).unwrap();
    assert_eq!(on_disk, out);
    let csv = std::fs::read_to_string(dir.path().join("trajectory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "t,S11,S12,S21,S22,trS,C2,H");
    assert_eq!(lines.count(), 101);
    let (_, again, _) = call(&["simulate", "--model", "top", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(again, out);
    assert_eq!(std::fs::read_to_string(dir.path().join("trajectory.csv")).unwrap(), csv);
}

#[test]
fn simulate_cm_cross_check() {
    let (code, out, _) = call(&["simulate", "--model", "cm", "--cross-check", "--steps", "500"]);
    assert_eq!(code, EXIT_OK);
    let dev = json(&out)["monitors"]["cross_check_max_deviation"].as_f64().unwrap();
    assert!(dev < 1e-8, "{dev}");
}

#[test]
fn simulate_ll_short_run_keeps_casimir() {
    let (code, out, _) = call(&["simulate", "--model", "ll", "--grid-n", "64", "--dt", "1e-3", "--steps", "200"]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    assert!(doc["monitors"]["casimir_defect_max"].as_f64().unwrap() < 1e-8);
}

#[test]
fn hyperbolic_ll_reports_last_stable_step() {
    let (code, out, err) = call(&["simulate", "--model", "ll", "--elliptic", "false", "--grid-n", "64"]);
    assert_eq!(code, EXIT_FAIL);
    let doc = json(&out);
    let status = &doc["status"];
    let last = status["last_stable_step"].as_u64().expect("instability reported");
    assert!(last > 0 && last < 1000);
    assert!(err.contains(&format!("last stable step {last}")), "{err}");
}

#[test]
fn transfer_single_site_and_commutativity() {
    let (code, out, _) = call(&["transfer", "--n", "1"]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    assert_eq!(check(&doc, "transfer.single-site")["pass"], true);
    let (code, out, _) = call(&["transfer", "--n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(check(&json(&out), "transfer.commutativity")["pass"], true);
}

#[test]
fn transfer_homogeneous_local_point() {
    let (code, out, _) = call(&["transfer", "--z", "0,0", "--etas", "0.5,0.5"]);
    assert_eq!(code, EXIT_OK);
    let lp = &json(&out)["local_point"];
    assert!(!lp["z0"].as_array().unwrap().is_empty(), "{lp}");
    assert_eq!(lp["transfer"].as_array().unwrap().len(), 4);
}

#[test]
fn binary_exit_codes_and_env_seed() {
    let bin = env!("CARGO_BIN_EXE_elevenvertex");
    let ok = Command::new(bin).args(["verify", "--suite", "rmatrix", "--points", "2"]).env("ELEVENVERTEX_SEED", "5").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&String::from_utf8(ok.stdout).unwrap())["seed"], 5);
    let flag = Command::new(bin).args(["verify", "--suite", "rmatrix", "--points", "2", "--seed", "9"]).env("ELEVENVERTEX_SEED", "5").output().unwrap();
    assert_eq!(json(&String::from_utf8(flag.stdout).unwrap())["seed"], 9);
    let bad_env = Command::new(bin).args(["verify", "--suite", "rmatrix"]).env("ELEVENVERTEX_SEED", "x").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
    let fail = Command::new(bin).args(["verify", "--suite", "poisson", "--corrupt", "S12,S21", "--points", "2"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let usage = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
