use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const PATH_COMPLEX: &str =
    r#"{"vertices":[{"id":0,"f":1},{"id":1,"f":2},{"id":2,"f":3}],"simplices":[[0,1],[1,2]]}"#;
// Two triangles uvw, vwx with x a local minimum that is not smooth.
const ROUGH: &str = r#"{"vertices":[{"id":0,"f":1},{"id":1,"f":3},{"id":2,"f":4},{"id":3,"f":2}],
                        "simplices":[[0,1,2],[1,2,3]]}"#;
const CHAIN_PIP: &str = r#"{"elements":["a","b"],"covers":[["a","b"]],"inconsistent":[]}"#;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_greedy-morse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gradient_of_a_path() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "path.json", PATH_COMPLEX);
    let out = bin(&["gradient", s(&input)]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["pairs"].as_array().unwrap().len(), 2);
    assert_eq!(report["critical"], serde_json::json!([[0]]));
    assert_eq!(report["variant"], "plain");
}

#[test]
fn fast_mode_matches_default_on_a_subdivision() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rough.json", ROUGH);
    let sd = dir.path().join("sd.json");
    assert!(bin(&["subdivide", s(&input), "-o", s(&sd)])
        .status
        .success());
    let slow = bin(&["gradient", s(&sd)]);
    let fast = bin(&["gradient", "--fast", s(&sd)]);
    assert!(slow.status.success() && fast.status.success());
    assert_eq!(slow.stdout, fast.stdout);
}

#[test]
fn fast_mode_refuses_rough_input() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rough.json", ROUGH);
    let out = bin(&["gradient", "--fast", s(&input)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not smooth"));
}

#[test]
fn smoothcheck_exit_codes() {
    let dir = TempDir::new().unwrap();
    let rough = write(&dir, "rough.json", ROUGH);
    let out = bin(&["smoothcheck", s(&rough)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["smooth"], false);

    let fine = write(
        &dir,
        "fine.json",
        &ROUGH.replace(r#""id":3,"f":2"#, r#""id":3,"f":5"#),
    );
    let out = bin(&["smoothcheck", s(&fine)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["smooth"], true);
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{ not json");
    let out = bin(&["gradient", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());

    let tied = write(
        &dir,
        "tied.json",
        r#"{"vertices":[{"id":0,"f":1},{"id":1,"f":1}],"simplices":[[0,1]]}"#,
    );
    assert_eq!(bin(&["gradient", s(&tied)]).status.code(), Some(2));
    assert_eq!(
        bin(&["gradient", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn off_input_with_scalars() {
    let dir = TempDir::new().unwrap();
    let off = write(
        &dir,
        "tri.off",
        "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n",
    );
    let scalars = write(&dir, "f.txt", "0.5 2.0 1.0\n");
    let out = bin(&["gradient", s(&off), "--scalars", s(&scalars)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["critical"], serde_json::json!([[0]]));
    assert_eq!(bin(&["gradient", s(&off)]).status.code(), Some(2));
}

#[test]
fn cat0_certificate_for_a_chain() {
    let dir = TempDir::new().unwrap();
    let pip = write(&dir, "chain.json", CHAIN_PIP);
    let out = bin(&["cat0", s(&pip)]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json(&out);
    assert_eq!(cert["cells"], 5);
    assert_eq!(cert["euler_characteristic"], 1);
    assert_eq!(cert["pairs"].as_array().unwrap().len(), 2);
    assert_eq!(
        cert["critical"],
        serde_json::json!([{"ideal": [], "marks": []}])
    );
    assert_eq!(cert["collapse_order"].as_array().unwrap().len(), 2);
}

#[test]
fn cat0_is_reproducible_under_a_seeded_order() {
    let dir = TempDir::new().unwrap();
    let pip = write(
        &dir,
        "pip.json",
        r#"{"elements":["a","b","c","d"],"covers":[["a","c"],["b","c"]],"inconsistent":[["c","d"]]}"#,
    );
    let one = bin(&["cat0", "--seed", "9", s(&pip)]);
    let two = bin(&["cat0", "--seed", "9", s(&pip)]);
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
    assert_eq!(json(&one)["critical"].as_array().unwrap().len(), 1);
}

#[test]
fn invalid_pip_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let pip = write(
        &dir,
        "cyc.json",
        r#"{"elements":["a","b"],"covers":[["a","b"],["b","a"]],"inconsistent":[]}"#,
    );
    assert_eq!(bin(&["cat0", s(&pip)]).status.code(), Some(2));
}

#[test]
fn dot_exports() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "path.json", PATH_COMPLEX);
    let out = bin(&["export-dot", s(&input)]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph hasse"));
    assert_eq!(dot.matches("style=bold").count(), 2);

    let out = bin(&["export-dot", "--graph", "vpaths", s(&input)]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("digraph vpaths"));

    let target = dir.path().join("g.dot");
    assert!(
        bin(&["gradient", "--format", "dot", s(&input), "-o", s(&target)])
            .status
            .success()
    );
    assert!(fs::read_to_string(target).unwrap().contains("fillcolor"));
}

#[test]
fn verify_subset_is_deterministic() {
    let args = [
        "verify",
        "--seed",
        "5",
        "--trials",
        "12",
        "--checks",
        "is-gradient,fast-match,cat0",
    ];
    let one = bin(&args);
    let two = bin(&args);
    assert_eq!(
        one.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&one.stderr)
    );
    assert_eq!(one.stdout, two.stdout);
    let report = json(&one);
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn unknown_check_is_rejected() {
    assert_eq!(
        bin(&["verify", "--checks", "nonsense"]).status.code(),
        Some(2)
    );
}
