//! End-to-end behavior of the binary: exit codes, formats, presets, and the
//! scenario/state file interfaces.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chsh-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("chsh-lab-test-{}-{name}", std::process::id()))
}

#[test]
fn every_scenario_preset_passes_the_landau_check() {
    for preset in ["optimal-qubit", "commuting-A", "commuting-B", "zero-product-MAB"] {
        let out = run(&["landau-check", "--preset", preset]);
        assert_eq!(out.status.code(), Some(0), "preset {preset}");
        let json = stdout_json(&out);
        assert_eq!(json["passed"], true);
        assert_eq!(json["command"], "landau-check");
    }
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let out = run(&["landau-check", "--preset", "no-such-thing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown scenario preset"));
}

#[test]
fn malformed_scenario_file_is_a_usage_error() {
    let path = temp_path("malformed.json");
    std::fs::write(&path, "{ this is not json").unwrap();
    let out = run(&["landau-check", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn scenario_files_round_trip_through_the_cli() {
    // Serialize a preset scenario, feed the file back in.
    let s = chsh_engine::generate::optimal_qubit_scenario().unwrap();
    let path = temp_path("scenario.json");
    std::fs::write(&path, serde_json::to_string(&s).unwrap()).unwrap();
    let out = run(&["landau-check", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_file(&path).ok();
}

#[test]
fn oversized_scan_dimensions_are_rejected() {
    let out = run(&["theorem1-scan", "--n", "5", "--local-dims", "9,9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_scan_is_a_clean_pass() {
    let out = run(&["theorem1-scan", "--n", "0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["results"]["agreements"], 0);
    assert_eq!(json["passed"], true);
}

#[test]
fn failed_statistical_check_exits_one() {
    // Two samples cannot support a 5-sigma equivalence check; this seed
    // produces |z| > 5 and the command reports a scientific failure.
    let out = run(&["pcsft-check", "--n", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert_eq!(json["passed"], false);
    assert_eq!(json["results"]["under_sampled"], true);
}

#[test]
fn csv_format_emits_tables() {
    let out = run(&[
        "chsh-run",
        "--rounds",
        "1000",
        "--seed",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("setting,"));
    assert_eq!(text.trim_end().lines().count(), 5);
}

#[test]
fn csv_format_without_a_table_is_an_error() {
    let out = run(&["landau-check", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_with_unknown_keys_is_rejected() {
    let path = temp_path("config.json");
    std::fs::write(
        &path,
        r#"{"n_scenarios": 5, "local_dims": [2], "seed": 1, "bogus": true}"#,
    )
    .unwrap();
    let out = run(&["theorem1-scan", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn config_file_drives_the_run_and_flags_override() {
    let path = temp_path("scan.json");
    std::fs::write(&path, r#"{"n_scenarios": 8, "local_dims": [2], "seed": 9}"#).unwrap();
    let out = run(&["theorem1-scan", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["config"]["n_scenarios"], 8);

    let out = run(&[
        "theorem1-scan",
        "--config",
        path.to_str().unwrap(),
        "--n",
        "3",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["config"]["n_scenarios"], 3);
    std::fs::remove_file(&path).ok();
}

#[test]
fn chsh_run_report_echoes_reproduction_inputs() {
    let out = run(&[
        "chsh-run",
        "--preset",
        "optimal-qubit",
        "--state",
        "phi-plus",
        "--rounds",
        "5000",
        "--seed",
        "77",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["config"]["seed"], 77);
    assert_eq!(json["config"]["rounds_per_setting"], 5000);
    assert_eq!(json["config"]["state"]["preset"], "phi-plus");
    // Positive-extreme state: the estimate lands near +√2.
    let estimate = json["results"]["experiment"]["chsh_estimate"].as_f64().unwrap();
    assert!((estimate - std::f64::consts::SQRT_2).abs() < 0.05);
    let extracted = json["results"]["extracted_norm_ma"].as_f64().unwrap();
    assert!((extracted - 2.0).abs() < 0.3);
}

#[test]
fn jpd_check_reports_the_mermin_functional() {
    let out = run(&[
        "jpd-check",
        "--families",
        "5",
        "--seed",
        "4",
        "--functional",
        "mermin-3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let functional = &json["results"]["functional"];
    assert_eq!(functional["classical_bound"], 2.0);
    assert!((functional["value"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(functional["violated"], true);
}

#[test]
fn spectral_max_handles_the_sign_fallback_preset() {
    let out = run(&["spectral-max", "--operator", "neg-identity-2"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["results"]["sign"], -1.0);
    assert_eq!(json["results"]["value"], 1.0);
}
