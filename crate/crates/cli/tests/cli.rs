//! End-to-end checks of the binary: output shapes, exit codes, and
//! byte-identical sweep output across runs.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_heisenlab")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("spawn heisenlab")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn sample_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/sample.json")
}

#[test]
fn algebra_mul_reports_twist_pair() {
    let out = run(&["algebra", "mul", "(1/2,0)", "(0,1)"]);
    let v = stdout_json(&out);
    assert_eq!(v["basis_product"]["phase_turn"], "1/2");
    assert_eq!(v["basis_product"]["element"]["x"][0], "1/2");
    assert_eq!(v["basis_product"]["element"]["y"][0], "1");
    // coefficient of the product element is e^{2πi·1/2} = -1
    assert_eq!(v["product"]["terms"][0]["re"].as_f64().unwrap(), -1.0);
}

#[test]
fn algebra_trace_and_conj() {
    let out = run(&["algebra", "trace", "3+2i*(1/2,1)"]);
    let v = stdout_json(&out);
    assert_eq!(v["trace"]["re"].as_f64().unwrap(), 3.0);

    let out = run(&["algebra", "conj", "(0,1/2)", "1+(1,0)"]);
    let v = stdout_json(&out);
    // conjugation multiplies (1,0) by e^{2πi·(-1/2)} = -1 and fixes 1
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
}

#[test]
fn algebra_reduce_replays_to_unit() {
    let out = run(&["algebra", "reduce", "1+(1,0)", "--replay"]);
    let v = stdout_json(&out);
    assert!(v["move_count"].as_u64().unwrap() <= 4);
    assert_eq!(v["replay"]["ok"], true);
    assert!(v["replay"]["unit_error"].as_f64().unwrap() < 1e-9);
}

#[test]
fn malformed_literal_exits_two() {
    let out = run(&["algebra", "mul", "(1,0,0)", "(0,1)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["algebra", "trace", "(1,q)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symplectic_solve_minimum_norm() {
    let out = run(&["symplectic", "solve", "--x", "(1,0)", "--t", "1/2"]);
    let v = stdout_json(&out);
    assert_eq!(v["y"]["x"][0], "0");
    assert_eq!(v["y"]["y"][0], "-1/2");
    assert_eq!(v["beta_y_x"], "1/2");
}

#[test]
fn poly_twist_realization() {
    let out = run(&[
        "poly",
        "twist",
        "--group",
        "(1,0) (0,1)",
        "--subgroup",
        "(0,1)",
        "--x",
        "(1,0)",
        "--alpha",
        "1+(1,0)",
        "--t",
        "1/2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["realization_exact"], true);
    // ζ = -1 flips the degree-1 coefficient
    assert_eq!(v["twisted_element"]["terms"][1]["re"].as_f64().unwrap(), -1.0);
}

#[test]
fn metaplectic_build_standard_lattice() {
    let out = run(&["metaplectic", "build", "--n", "1", "--gens", "(1,0) (0,1)"]);
    let v = stdout_json(&out);
    assert_eq!(v["factorization"]["status"], "PASS");
    assert_eq!(v["factorization"]["exact"], true);
    assert_eq!(v["cube"]["b"], 2);
    assert_eq!(v["pipeline"]["factors"].as_array().unwrap().len(), 4);
    assert!((v["trace_spot_checks"]["tau_one"]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["trace_spot_checks"]["tau_generator_max"].as_f64().unwrap() < 1e-12);
}

#[test]
fn metaplectic_rejects_dependent_generators() {
    let out = run(&["metaplectic", "build", "--n", "1", "--gens", "(1,0) (2,0)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metaplectic_trace_deviation_is_tiny() {
    let out = run(&["metaplectic", "trace", "--n", "1", "--pairs", "25", "--seed", "7"]);
    let v = stdout_json(&out);
    assert!(v["max_traciality_deviation"].as_f64().unwrap() < 1e-10);
}

#[test]
fn gauss_ip_with_quadrature_crosscheck() {
    let dir = tempfile::tempdir().unwrap();
    let packet = dir.path().join("phi.json");
    std::fs::write(
        &packet,
        r#"{"d":1,"A":[[{"re":1.0,"im":0.0}]],"w":[{"re":0.0,"im":0.0}],"r":{"re":0.0,"im":0.0}}"#,
    )
    .unwrap();
    let p = packet.to_str().unwrap();
    let out = run(&["gauss", "ip", "--f", p, "--g", p, "--quadrature"]);
    let v = stdout_json(&out);
    let ip = v["inner_product"]["re"].as_f64().unwrap();
    assert!((ip - 0.5f64.sqrt()).abs() < 1e-12);
    assert!(v["agreement"].as_f64().unwrap() < 1e-6);

    let out = run(&["gauss", "fourier", "--f", p]);
    let v = stdout_json(&out);
    // the standard Gaussian is a Fourier fixed point
    assert_eq!(v["packets"][0]["A"][0][0]["re"].as_f64().unwrap(), 1.0);
}

#[test]
fn independence_certify_sample_config_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "independence",
        "certify",
        "--config",
        sample_config().to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["verdict"], "certified-independent");
    assert_eq!(v["num_points"], 25);
}

#[test]
fn independence_certify_radius_zero_single_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{
  "n": 1,
  "generators": [{"x":["1"],"y":["0"]},{"x":["0"],"y":["1"]}],
  "offset": {"x":["1/3"],"y":["-1/2"]},
  "window": {"standard": 1},
  "radius": 0.0,
  "max_points": 10,
  "seed": 1
}"#,
    )
    .unwrap();
    let out = run(&["independence", "certify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["num_points"], 1);
    assert_eq!(v["verdict"], "certified-independent");
}

#[test]
fn independence_missing_config_exits_two() {
    let out = run(&["independence", "certify", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("sweep1.csv");
    let out2 = dir.path().join("sweep2.csv");
    for out in [&out1, &out2] {
        let res = run(&[
            "independence",
            "sweep",
            "--config",
            sample_config().to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "sweep CSV differs across runs");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("a,b,offset_x,offset_y,num_points,lambda_min,cond,residual,verdict\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 2 * 2);
}
