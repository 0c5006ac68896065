//! CLI acceptance: report determinism (criterion 9) and the exit-status
//! contract of the verification and scan commands.

use std::path::Path;
use std::process::{Command, Output};

fn riex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riex"))
        .args(args)
        .output()
        .expect("riex runs")
}

#[test]
fn criterion_09_verify_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = riex(&[
            "verify",
            "--trials",
            "25",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        // the trigonometric fiber displays flag, so the run exits 1
        assert_eq!(out.status.code(), Some(1));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b, "same config + seed must be byte-identical");
    println!("criterion 9 determinism: PASS ({} bytes)", bytes_a.len());
}

#[test]
fn verify_zero_branch_passes_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    let out = riex(&[
        "verify",
        "--branch",
        "xi3-zero",
        "--trials",
        "25",
        "--tol",
        "1e-8",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "zero branch must pass");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["pass"], true);
    assert_eq!(report["rng"], "chacha8");
    assert_eq!(report["zero_branch"]["all_pass"], true);
    assert!(report.get("nonzero_branch").is_none());
}

#[test]
fn verify_flagged_deviations_exit_nonzero() {
    let out = riex(&["verify", "--branch", "xi3-nonzero", "--trials", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report["pass"], false);
    let flagged = report["nonzero_branch"]["flagged_coords"].as_array().unwrap();
    assert!(!flagged.is_empty());
    // flagged formulas must carry traces
    for trial in report["nonzero_branch"]["trials"].as_array().unwrap() {
        for coord in trial["coords"].as_array().unwrap() {
            if coord["flagged"] == true {
                assert!(!coord["trace"].as_array().unwrap().is_empty());
            }
        }
    }
}

#[test]
fn ricci_scan_passes_on_the_extension() {
    let out = riex(&[
        "ricci",
        "--metric",
        "antimach8",
        "--points",
        "random:100",
        "--seed",
        "42",
        "--tol",
        "1e-10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["results"].as_array().unwrap().len(), 100);
    assert!(report["max_abs"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn ricci_scan_fails_on_a_curved_space() {
    // the unit sphere is not Ricci-flat: the tolerance flag must fire
    let out = riex(&[
        "ricci",
        "--metric",
        "sphere2",
        "--point",
        "1.0,0.3",
        "--tol",
        "1e-10",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn geodesic_constant_trajectory_csv() {
    let out = riex(&[
        "geodesic",
        "--metric",
        "antimach8",
        "--xi",
        "0,0,0,0",
        "--h",
        "0,0,0,0",
        "--s-max",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,x,y,z,t,P,Q,U,V,xdot,ydot,zdot,tdot,Pdot,Qdot,Udot,Vdot,norm"
    );
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 18);
        // every coordinate, velocity and the norm stays zero
        for field in &fields[1..] {
            assert_eq!(*field, "0");
        }
    }
}

#[test]
fn geodesic_four_dimensional_header() {
    let out = riex(&[
        "geodesic",
        "--metric",
        "antimach4",
        "--x0",
        "0,0,0,0",
        "--v0",
        "1,0,1,0",
        "--s-max",
        "1",
        "--samples",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("s,x,y,z,t,xdot,ydot,zdot,tdot,norm\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn config_errors_exit_two() {
    let out = riex(&["ricci", "--metric", "nosuch", "--points", "random:2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = riex(&["geodesic", "--metric", "antimach8"]);
    assert_eq!(out.status.code(), Some(2));
    let out = riex(&["verify", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn user_polynomial_metric_spec() {
    // a flat 2d metric written as a polynomial spec behaves like flat2
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("flat2.json");
    std::fs::write(
        &spec,
        r#"{
  "dim": 2,
  "components": [
    {"i": 0, "j": 0, "terms": [{"c": 1.0, "p": [0, 0]}]},
    {"i": 1, "j": 1, "terms": [{"c": 1.0, "p": [0, 0]}]}
  ]
}"#,
    )
    .unwrap();
    let out = riex(&[
        "christoffel",
        "--metric",
        spec.to_str().unwrap(),
        "--point",
        "0.3,0.7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report["components"].as_array().unwrap().len(), 0);
}

#[test]
fn surface_csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen.json");
    std::fs::write(
        &gen,
        r#"{
  "f": {"poly": [0.0, 1.0]},
  "g": {"poly": [0.0, 1.0]},
  "c3": 1.0,
  "c4": 2.0,
  "c5": 3.0
}"#,
    )
    .unwrap();
    let out = riex(&[
        "surface",
        "--gen",
        gen.to_str().unwrap(),
        "--grid",
        "3x3",
        "--domain",
        "0,1,0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("u,v,x,y,z,t,res1,res2,res3,res4\n"));
    // (u, v) = (1, 1): x = 5, y = -4, z = 2, t = 0, residuals zero
    let last = text.lines().last().unwrap();
    assert_eq!(last, "1,1,5,-4,2,0,0,0,0,0");
}

#[test]
fn extend_command_reproduces_expected_components() {
    let out = riex(&[
        "extend",
        "--metric",
        "antimach4",
        "--point",
        "0,0,0,2,1,-1,0.5,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(report["signature"], serde_json::json!([4, 4]));
    assert_eq!(report["det"].as_f64().unwrap(), 1.0);
    let find = |label: &str| {
        report["components"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["label"] == label)
            .unwrap_or_else(|| panic!("missing {label}"))["value"]
            .as_f64()
            .unwrap()
    };
    assert!((find("g_{z,t}") - 2.0).abs() < 1e-12); // 2P
    assert!((find("g_{x,t}") + 2.0).abs() < 1e-12); // 2Q
    assert!((find("g_{z,z}") - 24.0).abs() < 1e-12); // 4tV
    assert!((find("g_{x,z}") + 6.0).abs() < 1e-12); // -2V
}

#[test]
fn jsonl_trajectory_format() {
    let out = riex(&[
        "geodesic",
        "--metric",
        "antimach4",
        "--v0",
        "1,0,1,0",
        "--s-max",
        "0.5",
        "--samples",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["position"].as_array().unwrap().len() == 4);
        assert!(v["norm"].is_number());
    }
}

#[test]
fn report_files_match_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let piped = riex(&["verify", "--branch", "xi3-zero", "--trials", "3"]);
    let _ = riex(&[
        "verify",
        "--branch",
        "xi3-zero",
        "--trials",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        String::from_utf8_lossy(&piped.stdout),
        std::fs::read_to_string(Path::new(&path)).unwrap()
    );
}
