//! End-to-end runs of the `halflight` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn halflight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_halflight")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn passing_fixtures_exit_zero() {
    for name in ["example_ex1.cfg", "example_r41.cfg", "null_plane.cfg"] {
        let o = halflight(&["check", fixture(name).to_str().unwrap()]);
        let out = String::from_utf8_lossy(&o.stdout);
        assert_eq!(code(&o), 0, "{name}:\n{out}");
        assert!(out.trim_end().ends_with("overall: pass"));
    }
}

#[test]
fn counterexamples_exit_two() {
    for name in ["null_helix.cfg", "null_helicoid.cfg", "example_ex1_screen.cfg"] {
        let o = halflight(&["check", fixture(name).to_str().unwrap()]);
        assert_eq!(code(&o), 2, "{name}");
        assert!(String::from_utf8_lossy(&o.stdout).contains("FAIL"));
    }
}

#[test]
fn usage_and_config_errors_exit_one() {
    let empty = scratch("empty.cfg");
    std::fs::write(&empty, "").unwrap();
    let o = halflight(&["check", empty.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema"));

    let bad = scratch("bad.cfg");
    std::fs::write(&bad, "schema = 1\nname = \"x\"\nsignature = [-1, -1, 1]\n[immersion]\nform = \"parametric\"\ncoordinates = [\"u1\", \"u1\", \"sqrt(2)*u1\", \"u2\"]\ndomain = [[-1.0, 1.0], [-1.0, 1.0]]\n").unwrap();
    let o = halflight(&["check", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("signature"));

    assert_eq!(code(&halflight(&["check", "/nonexistent/x.cfg"])), 1);
    assert_eq!(code(&halflight(&["check"])), 1);
    assert_eq!(code(&halflight(&["check", fixture("null_plane.cfg").to_str().unwrap(), "--point", "1"])), 1);
    assert_eq!(code(&halflight(&["check", fixture("null_plane.cfg").to_str().unwrap(), "--tol", "-1"])), 1);
    assert_eq!(code(&halflight(&["frobnicate"])), 1);
    assert_eq!(code(&halflight(&["--help"])), 0);
}

#[test]
fn json_report_is_deterministic() {
    let cfg = fixture("example_ex1.cfg");
    let a = halflight(&["check", cfg.to_str().unwrap(), "--report", "-"]);
    let b = halflight(&["check", cfg.to_str().unwrap(), "--report", "-"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["name"], "example_ex1");
    assert_eq!(v["passed"], true);
    let tol = v["tolerances"][0]["tol"].to_string();
    assert_eq!(tol, "1.0000000000000000e-8");
}

#[test]
fn report_file_and_table_together() {
    let path = scratch("helix.json");
    let o = halflight(&["check", fixture("null_helix.cfg").to_str().unwrap(), "--report", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stdout).contains("planar_degenerate"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert!(failed.contains(&"planar_degenerate"), "{failed:?}");
}

#[test]
fn single_point_with_trace_samples() {
    let o = halflight(&[
        "check",
        fixture("example_r41.cfg").to_str().unwrap(),
        "--point",
        "0.2,-0.3",
        "--backend",
        "jet",
        "--trace",
        "v",
        "--report",
        "-",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    let curve = &points[0]["data"]["nondegenerate"]["trace"]["curve"];
    assert_eq!(curve["samples"].as_array().unwrap().len(), 9);
    assert!(points[0]["data"]["degenerate"]["trace"].get("curve").is_none());
}

// A point outside the domain is recorded per point; with no point left the
// run is an error.
#[test]
fn point_outside_the_domain() {
    let o = halflight(&["check", fixture("example_r41.cfg").to_str().unwrap(), "--point", "0,0.95"]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
}
