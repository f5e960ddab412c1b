//! CLI contract tests: config ingestion, output formats, exit codes, and
//! run-to-run determinism.

use std::fs;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kvn-lab"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).expect("write config");
    path
}

/// Small, fast scenario shared by the run tests.
const SMALL: &str = r#"{
    "potential": {"kind": "harmonic", "omega": 1.0},
    "grid": {"nx": 64, "nv": 64},
    "initial": {"x0": 1.0, "v0": 0.0, "sigma_x": 1.0, "sigma_v": 1.0},
    "dt": 0.01,
    "steps": 50,
    "record_every": 5
}"#;

#[test]
fn minimal_config_gets_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "minimal.json", "{}");
    let parsed = kvn_lab::harness::parse_config(&config).unwrap();
    assert_eq!(parsed.grid.nx, 256);
    assert_eq!(parsed.grid.nv, 256);
    assert_eq!(parsed.dt, 0.005);
}

#[test]
fn missing_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["evolve", "--config"])
        .arg(dir.path().join("nope.json"))
        .arg("--out-dir")
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn unknown_potential_kind_exits_2_and_lists_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "bad.json",
        r#"{"potential": {"kind": "cubic"}}"#,
    );
    let output = bin()
        .args(["evolve", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("harmonic"), "kinds listed: {stderr}");
    assert!(stderr.contains("quartic"));
}

#[test]
fn narrow_packet_exits_3_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "narrow.json",
        r#"{"initial": {"sigma_x": 0.01}}"#,
    );
    let output = bin()
        .args(["evolve", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("sigma_x"));
}

#[test]
fn evolve_writes_series_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "small.json", SMALL);
    let out = dir.path().join("run");
    let status = bin()
        .args(["evolve", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let csv = fs::read_to_string(out.join("series.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,norm,mean_x,mean_v,mean_force_over_m,newton_residual"
    );
    let first = lines.next().unwrap();
    let fields: Vec<&str> = first.split(',').collect();
    assert_eq!(fields.len(), 6);
    let norm: f64 = fields[1].parse().unwrap();
    assert!((norm - 1.0).abs() < 1e-10);
    // Full precision: 16 digits after the decimal point in e-notation.
    assert!(fields[1].contains('e') || fields[1].contains('E'));
    assert_eq!(fields[5], "NaN");

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    let outputs: Vec<String> = manifest["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert!(outputs.contains(&"series.csv".to_string()));
    assert!(outputs.contains(&"manifest.json".to_string()));
    // No orphan writes: everything in the directory is listed.
    for entry in fs::read_dir(&out).unwrap() {
        let name = entry.unwrap().file_name().to_string_lossy().to_string();
        assert!(outputs.contains(&name), "orphan output {name}");
    }
}

#[test]
fn evolve_is_deterministic_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "small.json", SMALL);
    let mut series = Vec::new();
    for sub in ["a", "b"] {
        let out = dir.path().join(sub);
        let status = bin()
            .args(["evolve", "--seed", "7", "--config"])
            .arg(&config)
            .arg("--out-dir")
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        series.push(fs::read(out.join("series.csv")).unwrap());
    }
    assert_eq!(series[0], series[1]);
}

#[test]
fn trajectory_columns_follow_lambda_presence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("classical");
    let config = write_config(dir.path(), "classical.json", SMALL);
    bin()
        .args(["trajectory", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    let csv = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert!(csv.starts_with("t,x,v\n"));

    let extended = SMALL.replace(
        r#""initial": {"x0": 1.0, "v0": 0.0, "sigma_x": 1.0, "sigma_v": 1.0}"#,
        r#""initial": {"x0": 1.0, "v0": 0.0, "sigma_x": 1.0, "sigma_v": 1.0,
                       "lambda_x0": 0.0, "lambda_v0": 1.0}"#,
    );
    let config = write_config(dir.path(), "extended.json", &extended);
    let out = dir.path().join("extended");
    bin()
        .args(["trajectory", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    let csv = fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert!(csv.starts_with("t,x,v,lambda_x,lambda_v\n"));
}

#[test]
fn action_check_reports_stationary_quartic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "quartic.json",
        r#"{
            "potential": {"kind": "quartic", "a4": 1.0},
            "grid": {"nx": 64, "nv": 64},
            "initial": {"x0": 1.0, "v0": 0.0, "sigma_x": 1.0, "sigma_v": 1.0},
            "dt": 0.001,
            "steps": 2000
        }"#,
    );
    let out = dir.path().join("action");
    let status = bin()
        .args(["action-check", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("action_certificate.json")).unwrap())
            .unwrap();
    assert_eq!(cert["passed"], serde_json::Value::Bool(true));
    assert_eq!(cert["hamilton_on_shell"]["classification"], "stationary");
    assert_eq!(cert["schwinger_on_shell"]["classification"], "stationary");
    assert_eq!(
        cert["hamilton_biased"][0]["report"]["classification"],
        "non-stationary"
    );
}

#[test]
fn commutator_check_passes_on_tiny_grid() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "tiny.json",
        r#"{"grid": {"nx": 16, "nv": 16}, "initial": {"sigma_x": 4.0, "sigma_v": 4.0, "x0": 0.0}}"#,
    );
    let out = dir.path().join("comm");
    let status = bin()
        .args(["commutator-check", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("commutators.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], serde_json::Value::Bool(true));
    assert_eq!(report["zero_commutators"].as_array().unwrap().len(), 6);
}

#[test]
fn heisenberg_check_runs_on_tiny_grid() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "tiny.json",
        r#"{"grid": {"nx": 16, "nv": 16}, "initial": {"sigma_x": 4.0, "sigma_v": 4.0, "x0": 0.0}}"#,
    );
    let out = dir.path().join("heis");
    let status = bin()
        .args(["heisenberg-check", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("heisenberg.json")).unwrap()).unwrap();
    for defect in report["unitarity_defect"].as_array().unwrap() {
        assert!(defect.as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn dt_override_is_applied() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "small.json", SMALL);
    let out = dir.path().join("run");
    bin()
        .args(["evolve", "--dt", "0.02", "--steps", "10", "--config"])
        .arg(&config)
        .arg("--out-dir")
        .arg(&out)
        .status()
        .unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["dt"].as_f64().unwrap(), 0.02);
    assert_eq!(manifest["config"]["steps"].as_u64().unwrap(), 10);
}
