use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fairkc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairkc"))
        .args(args)
        .output()
        .expect("failed to spawn fairkc")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is not JSON")
}

fn line4(dir: &Path) -> String {
    let path = dir.join("line4.csv");
    std::fs::write(&path, "0\n1\n2\n10\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn solve_exact22_running_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = line4(dir.path());
    let report = json(&fairkc(&[
        "solve", "--input", &input, "--k", "2", "--alpha", "1", "--algorithm", "exact22",
    ]));
    assert_eq!(report["centers"], serde_json::json!([0, 3]));
    assert_eq!(report["cost"], 2.0);
    assert_eq!(report["fail"], false);
    assert_eq!(report["feasible"], true);
    assert_eq!(report["radii_mode"], "exact");
    assert!(report["max_fairness_ratio"].as_f64().unwrap() <= 2.0);
}

#[test]
fn oracle_running_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = line4(dir.path());
    let res = json(&fairkc(&["oracle", "--input", &input, "--k", "2", "--alpha", "1"]));
    assert_eq!(res["feasible"], true);
    assert_eq!(res["optimal_cost"], 1.0);
}

#[test]
fn oracle_infeasible_cost_is_inf_string() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.csv");
    std::fs::write(&path, "x\n0\n10\n").unwrap();
    let res = json(&fairkc(&[
        "oracle", "--input", path.to_str().unwrap(), "--k", "1", "--alpha", "0.1",
    ]));
    assert_eq!(res["feasible"], false);
    assert_eq!(res["optimal_cost"], "inf");
}

#[test]
fn fast10_delegates_when_k_is_large() {
    let report = json(&fairkc(&[
        "solve", "--gen", "uniform_box:n=10,seed=3", "--k", "7", "--alpha", "1",
        "--algorithm", "fast10",
    ]));
    assert_eq!(report["algorithm"], "fast10");
    assert_eq!(report["delegated"], true);
    assert_eq!(report["radii_mode"], "exact");
    assert_eq!(report["epsilon"], 0.5);
    assert_eq!(report["delta"], 0.1);
}

#[test]
fn fast10_runs_the_sampling_pipeline() {
    let report = json(&fairkc(&[
        "solve", "--gen", "uniform_box:n=600,seed=1", "--k", "5", "--alpha", "2",
        "--algorithm", "fast10", "--seed", "9",
    ]));
    assert_eq!(report["delegated"], false);
    assert_eq!(report["radii_mode"], "approx");
    assert_eq!(report["seed"], 9);
    if report["fail"] == false {
        assert!(report["centers"].as_array().unwrap().len() <= 5);
        assert!(report["exact_radius_computations"].as_u64().unwrap() <= 15);
    }
}

#[test]
fn reports_are_deterministic_apart_from_wall_time() {
    let args = [
        "solve", "--gen", "gaussian_blobs:n=300,seed=4", "--k", "3", "--alpha", "1.5",
        "--algorithm", "fast10", "--seed", "17",
    ];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_ms");
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(json(&fairkc(&args)));
    let b = strip(json(&fairkc(&args)));
    assert_eq!(a, b);
}

#[test]
fn gonzalez_reports_unknown_feasibility() {
    let dir = tempfile::tempdir().unwrap();
    let input = line4(dir.path());
    let report = json(&fairkc(&["solve", "--input", &input, "--k", "2", "--algorithm", "gonzalez"]));
    assert_eq!(report["centers"], serde_json::json!([0, 3]));
    assert_eq!(report["feasible"], Value::Null);
}

#[test]
fn pad_to_k_fills_the_center_set() {
    let dir = tempfile::tempdir().unwrap();
    let input = line4(dir.path());
    let report = json(&fairkc(&[
        "solve", "--input", &input, "--k", "4", "--alpha", "100", "--pad-to-k",
    ]));
    assert_eq!(report["centers"].as_array().unwrap().len(), 4);
    assert_eq!(report["cost"], 0.0);
}

#[test]
fn radii_exact_and_approx() {
    let dir = tempfile::tempdir().unwrap();
    let input = line4(dir.path());
    let r = json(&fairkc(&["radii", "--input", &input, "--k", "2"]));
    assert_eq!(r, serde_json::json!([1.0, 1.0, 1.0, 8.0]));

    let approx = json(&fairkc(&[
        "radii", "--gen", "uniform_box:n=120,seed=2", "--k", "2", "--radii-mode", "approx",
    ]));
    assert!(approx.is_null() || approx.as_array().unwrap().len() == 120);
}

#[test]
fn gen_then_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pts.csv");
    let mat = dir.path().join("pts.txt");
    let spec = "duplicate_heavy:n=12,dim=2,multiplicity=3,seed=5";
    assert!(fairkc(&["gen", "--gen", spec, "--output", csv.to_str().unwrap()]).status.success());
    assert!(fairkc(&["gen", "--gen", spec, "--format", "matrix", "--output", mat.to_str().unwrap()])
        .status
        .success());
    let from_csv = json(&fairkc(&["radii", "--input", csv.to_str().unwrap(), "--k", "3"]));
    let from_mat = json(&fairkc(&["radii", "--matrix", mat.to_str().unwrap(), "--k", "3"]));
    let from_gen = json(&fairkc(&["radii", "--gen", spec, "--k", "3"]));
    assert_eq!(from_csv, from_gen);
    let close = from_mat
        .as_array()
        .unwrap()
        .iter()
        .zip(from_gen.as_array().unwrap())
        .all(|(a, b)| (a.as_f64().unwrap() - b.as_f64().unwrap()).abs() < 1e-9);
    assert!(close);
}

#[test]
fn output_flag_writes_file_not_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let input = line4(dir.path());
    let out_path = dir.path().join("report.json");
    let out = fairkc(&[
        "solve", "--input", &input, "--k", "2", "--alpha", "1", "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(report["cost"], 2.0);
}

#[test]
fn no_feasible_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.csv");
    std::fs::write(&path, "0\n10\n").unwrap();
    let report = json(&fairkc(&[
        "solve", "--input", path.to_str().unwrap(), "--k", "1", "--alpha", "0.1",
    ]));
    assert_eq!(report["feasible"], false);
    assert_eq!(report["cost"], Value::Null);
    assert_eq!(report["centers"], serde_json::json!([]));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = line4(dir.path());
    let cases: [&[&str]; 5] = [
        &["solve", "--k", "2", "--alpha", "1"],
        &["solve", "--input", &input, "--gen", "line", "--k", "2", "--alpha", "1"],
        &["solve", "--input", &input, "--k", "0", "--alpha", "1"],
        &["solve", "--input", &input, "--k", "2"],
        &["solve", "--input", &input, "--k", "2", "--alpha", "-1"],
    ];
    for args in cases {
        let out = fairkc(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    let big = fairkc(&["oracle", "--gen", "uniform_box:n=21", "--k", "2", "--alpha", "1"]);
    assert_eq!(big.status.code(), Some(2));
}

#[test]
fn data_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.csv");
    let out = fairkc(&["solve", "--input", missing.to_str().unwrap(), "--k", "1", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(3));

    let ragged = dir.path().join("ragged.csv");
    std::fs::write(&ragged, "0,1\n2\n").unwrap();
    let out = fairkc(&["radii", "--input", ragged.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let asym = dir.path().join("asym.txt");
    std::fs::write(&asym, "2\n0 1\n1.001 0\n").unwrap();
    let out = fairkc(&["radii", "--matrix", asym.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_reports_trials_and_scaling() {
    let res = json(&fairkc(&[
        "bench", "--gen", "uniform_box:n=120,seed=1", "--k", "2", "--trials", "4",
        "--sizes", "120,240", "--reps", "1",
    ]));
    assert_eq!(res["trials"]["trials"], 4);
    assert_eq!(res["scaling"].as_array().unwrap().len(), 2);
}
