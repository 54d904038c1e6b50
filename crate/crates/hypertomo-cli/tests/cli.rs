//! End-to-end runs of the binary over its fast subcommands.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypertomo"))
}

fn write_spec(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn volume_of_ball_matches_closed_form() {
    let spec = write_spec(
        "cli_ball.json",
        r#"{"type": "euclidean_ball", "n": 3, "radius": 0.5}"#,
    );
    let out = bin()
        .args(["volume", "--body", spec.to_str().unwrap(), "--n", "3"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let hv = v["result"]["hvol"].as_f64().unwrap();
    // 8^3 |S^5| mu_3(1/2)
    assert!((hv - 97.995).abs() < 0.01, "hvol {hv}");
    assert_eq!(v["schema"], 1);
}

#[test]
fn ft_of_two_ellipse_body_hits_the_anchor() {
    let spec = write_spec(
        "cli_m_body.json",
        r#"{"type": "cotent", "base": {"type": "two_ellipse", "n": 3, "s": 0.3, "b": 1.1}}"#,
    );
    let out = bin()
        .args([
            "ft",
            "--body",
            spec.to_str().unwrap(),
            "--degree",
            "-2",
            "--xi",
            "axis_n",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value + 0.8422).abs() < 0.02, "ft {value}");
}

#[test]
fn ellipsoid_circular_section() {
    let out = bin()
        .args(["ellipsoid", "--axes", "3,2,1", "--offset", "0.5"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["slice"]["kind"], "circle");
    let ratio = v["result"]["similarity_ratio"].as_f64().unwrap();
    assert!(ratio > 0.0 && ratio < 1.0);
}

#[test]
fn geodesic_endpoints_roundtrip() {
    let out = bin()
        .args([
            "geodesic",
            "--x",
            "0.3,0,0,0,0,0",
            "--y",
            "0,0.25,0.1,0,0,0",
            "--samples",
            "9",
            "--format",
            "csv",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let first = text.lines().nth(1).unwrap();
    assert!(first.starts_with("0."), "row: {first}");
    let cols: Vec<f64> = first.split(',').map(|t| t.parse().unwrap()).collect();
    assert!((cols[1] - 0.3).abs() < 1e-10);
}

#[test]
fn bad_spec_reports_offending_path() {
    let spec = write_spec(
        "cli_bad.json",
        r#"{"type": "two_ellipse", "n": 3, "s": 0.6, "b": 1.1}"#,
    );
    let out = bin()
        .args(["volume", "--body", spec.to_str().unwrap(), "--n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("validation") || err.contains("0 < s < 1/2"), "{err}");
}

#[test]
fn identical_seeds_give_identical_artifacts() {
    let spec = write_spec(
        "cli_lq.json",
        r#"{"type": "lq_ball", "n": 3, "q": 4.0}"#,
    );
    let run = || {
        bin()
            .args([
                "section",
                "--body",
                spec.to_str().unwrap(),
                "--n",
                "3",
                "--l",
                "1",
                "--subspaces",
                "4",
                "--rule-size",
                "256",
                "--seed",
                "42",
                "--format",
                "csv",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "artifacts differ between identical runs");
}
