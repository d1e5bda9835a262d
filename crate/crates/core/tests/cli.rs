use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const LINEAR: &str = r#"{"kind": "polynomial", "coeffs": [1.0, 0.5]}"#;

fn fptbridge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fptbridge")).args(args).current_dir(dir).output().unwrap()
}

fn write_config(dir: &Path, body: &str) {
    fs::write(dir.join("run.json"), body).unwrap();
}

#[test]
fn missing_boundary_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), r#"{"seed": 1}"#);
    let out = fptbridge(dir.path(), &["density", "--config", "run.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("boundary"));
}

#[test]
fn missing_seed_exits_2_and_flag_supplies_it() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), &format!(r#"{{"boundary": {LINEAR}, "sample": {{"n_paths": 1, "n_steps": 4}}}}"#));
    let out = fptbridge(dir.path(), &["sample", "--config", "run.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fptbridge(dir.path(), &["sample", "--config", "run.json", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("path,t,value\n"));
}

#[test]
fn malformed_and_unknown_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "{ not json");
    assert_eq!(fptbridge(dir.path(), &["cdf", "--config", "run.json"]).status.code(), Some(2));
    write_config(dir.path(), &format!(r#"{{"boundary": {LINEAR}, "seed": 1, "extra": 0}}"#));
    assert_eq!(fptbridge(dir.path(), &["cdf", "--config", "run.json"]).status.code(), Some(2));
    assert_eq!(fptbridge(dir.path(), &["cdf", "--config", "absent.json"]).status.code(), Some(2));
    assert_eq!(fptbridge(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn nonconvex_boundary_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), r#"{"boundary": {"kind": "polynomial", "coeffs": [1.0, 0.0, -0.1]}, "seed": 1}"#);
    let out = fptbridge(dir.path(), &["density", "--config", "run.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unresolvable_pde_grid_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        r#"{"boundary": {"kind": "polynomial", "coeffs": [1.0, 0.0, 0.1]}, "seed": 1,
            "pde": {"grid": {"n_t": 2, "n_a": 400, "a_min": 0.001}}}"#,
    );
    assert_eq!(fptbridge(dir.path(), &["pde", "--config", "run.json"]).status.code(), Some(2));
}

#[test]
fn print_config_shows_every_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = fptbridge(dir.path(), &["density", "--print-config", "--seed", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let cfg: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(cfg["seed"], 12);
    for key in ["boundary", "mc", "density", "cdf", "bounds", "sample", "validate", "pde", "output"] {
        assert!(cfg.get(key).is_some(), "{key} missing");
    }
    assert_eq!(cfg["pde"]["grid"]["n_t"], 2000);
    assert_eq!(cfg["validate"]["n_steps"], 3000);
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), &format!(r#"{{"boundary": {LINEAR}, "seed": 1, "sample": {{"n_paths": 2, "n_steps": 8}}}}"#));
    let a = fptbridge(dir.path(), &["sample", "--config", "run.json"]).stdout;
    let b = fptbridge(dir.path(), &["sample", "--config", "run.json", "--seed", "1"]).stdout;
    let c = fptbridge(dir.path(), &["sample", "--config", "run.json", "--seed", "2"]).stdout;
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn validate_linear_boundary_at_stated_sizes_passes() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        &format!(
            r#"{{"boundary": {LINEAR}, "seed": 2024,
                "validate": {{"horizon": 2.0, "n_paths": 100000, "n_steps": 2000, "tolerance": 0.01}}}}"#
        ),
    );
    let out = fptbridge(dir.path(), &["validate", "--config", "run.json", "--out", "v.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let verdict = fs::read_to_string(dir.path().join("v.csv")).unwrap();
    assert!(verdict.contains("model,closed_form\n"));
    assert!(verdict.ends_with("verdict,pass\n"), "{verdict}");
    let curves = fs::read_to_string(dir.path().join("v.csv.cdf.csv")).unwrap();
    assert_eq!(curves.lines().count(), 1 + 201);
}

#[test]
fn density_writes_csv_and_gnuplot_script() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        &format!(
            r#"{{"boundary": {LINEAR}, "seed": 3, "mc": {{"n_paths": 100, "n_steps": 8}},
                "density": {{"t_max": 2.0, "n_points": 4}}, "output": {{"gnuplot": true}}}}"#
        ),
    );
    let out = fptbridge(dir.path(), &["density", "--config", "run.json", "--out", "d.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("d.csv")).unwrap();
    assert!(csv.starts_with("s,density,stderr,lower,upper\n"));
    assert_eq!(csv.lines().count(), 5);
    assert!(!csv.contains('\r'));
    let script = fs::read_to_string(dir.path().join("d.csv.gp")).unwrap();
    assert!(script.contains("'d.csv'"));
}

#[test]
fn pde_writes_field_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        r#"{"boundary": {"kind": "polynomial", "coeffs": [1.0, 0.0, 0.1]}, "seed": 5,
            "mc": {"n_paths": 20000, "n_steps": 64},
            "pde": {"s": 1.0, "grid": {"n_t": 200, "n_a": 60, "a_min": 0.001}, "check_a": [1.0]}}"#,
    );
    let out = fptbridge(dir.path(), &["pde", "--config", "run.json", "--out", "v.csv"]);
    assert_eq!(out.status.code(), Some(0));
    let field = fs::read_to_string(dir.path().join("v.csv")).unwrap();
    assert_eq!(field.lines().count(), 1 + 201 * 61);
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("v.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["equation"], "cauchy");
    assert!(meta["residual"].as_f64().unwrap().is_finite());
    let gap = &meta["oracle"][0];
    assert!(gap["relative_gap"].as_f64().unwrap() < 0.02);
}

#[test]
fn json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        &format!(
            r#"{{"boundary": {LINEAR}, "seed": 3, "mc": {{"n_paths": 100, "n_steps": 8}},
                "cdf": {{"t_max": 1.0, "n_points": 3, "n_quad": 16}}, "output": {{"format": "json"}}}}"#
        ),
    );
    let out = fptbridge(dir.path(), &["cdf", "--config", "run.json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[2]["t"], 1.0);
}
