use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_compat-tri"));
    c.env_remove("COMPAT_TRI_BRUTE_MAX");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Generated ladder pair and its certificate in a scratch directory.
fn ladder(dir: &TempDir) -> (PathBuf, PathBuf) {
    let pair = dir.path().join("pair.json");
    let tri = dir.path().join("tri.json");
    let g = run(&["generate", "--instance", s(&data("ladder2.json")), "--out", s(&pair)]);
    assert_eq!(g.status.code(), Some(0), "{}", String::from_utf8_lossy(&g.stderr));
    assert_eq!(stdout_json(&g)["k"], 10);
    let c =
        run(&["certify", "--pair", s(&pair), "--assignment", s(&data("ladder2-assignment.json")), "--out", s(&tri)]);
    assert_eq!(c.status.code(), Some(0), "{}", String::from_utf8_lossy(&c.stderr));
    let j = stdout_json(&c);
    assert_eq!(j["steiner"], 10);
    assert_eq!(j["verified"], true);
    (pair, tri)
}

#[test]
fn generate_certify_extract_and_validate() {
    let dir = TempDir::new().unwrap();
    let (pair, tri) = ladder(&dir);

    let e = run(&["extract", "--pair", s(&pair), "--triangulations", s(&tri)]);
    assert_eq!(e.status.code(), Some(0));
    let j = stdout_json(&e);
    assert_eq!(j["satisfies"], true);
    assert_eq!(j["assignment"]["x1"], true);

    let v = run(&["validate", "--pair", s(&pair), "--triangulations", s(&tri)]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));
    assert_eq!(stdout_json(&v)["valid"], true);
}

#[test]
fn analyze_reports_graph_and_bounds() {
    let dir = TempDir::new().unwrap();
    let pair = dir.path().join("pair.json");
    assert!(run(&["generate", "--instance", s(&data("ladder2.json")), "--out", s(&pair)]).status.success());
    let a = run(&["analyze", "--pair", s(&pair), "--clause", "1"]);
    assert_eq!(a.status.code(), Some(0));
    let j = stdout_json(&a);
    assert_eq!(j["bipartite"], true);
    assert_eq!(j["matching"].as_array().unwrap().len(), 3);
    assert_eq!(j["cover"], serde_json::json!(["q", "r", "s"]));
    assert_eq!(j["bounds"]["none"], 6);
    assert_eq!(j["bounds"]["r'"], 5);

    let bad = run(&["analyze", "--pair", s(&pair), "--clause", "7"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn unsatisfying_assignment_is_a_no() {
    let dir = TempDir::new().unwrap();
    let pair = dir.path().join("pair.json");
    let a = dir.path().join("a.json");
    std::fs::write(&a, r#"{"x1":true,"x2":true,"x3":true}"#).unwrap();
    assert!(run(&["generate", "--instance", s(&data("ladder2.json")), "--out", s(&pair)]).status.success());
    let c = run(&["certify", "--pair", s(&pair), "--assignment", s(&a)]);
    assert_eq!(c.status.code(), Some(1));
    std::fs::write(&a, r#"{"x1":true}"#).unwrap();
    let c = run(&["certify", "--pair", s(&pair), "--assignment", s(&a)]);
    assert_eq!(c.status.code(), Some(2));
}

#[test]
fn solve_zero_verdicts_and_exit_codes() {
    let yes = run(&["solve-zero", "--pair", s(&data("convex-pair.json")), "--brute"]);
    assert_eq!(yes.status.code(), Some(0));
    let j = stdout_json(&yes);
    assert_eq!(j["verdict"], "yes");
    assert_eq!(j["brute_force"], "yes");
    assert_eq!(j["witness"]["t1"]["faces"].as_array().unwrap().len(), 3);

    let no = run(&["solve-zero", "--pair", s(&data("blocked-quad.json")), "--brute"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout_json(&no)["verdict"], "no");
}

#[test]
fn brute_force_cap_comes_from_the_environment() {
    let capped = bin()
        .args(["solve-zero", "--pair", s(&data("convex-pair.json")), "--brute"])
        .env("COMPAT_TRI_BRUTE_MAX", "4")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("capped at 4"));
    let junk = bin()
        .args(["solve-zero", "--pair", s(&data("convex-pair.json")), "--brute"])
        .env("COMPAT_TRI_BRUTE_MAX", "many")
        .output()
        .unwrap();
    assert_eq!(junk.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two_and_name_the_place() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"p1\": [\n").unwrap();
    let o = run(&["solve-zero", "--pair", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json") && err.contains("line"), "{err}");

    assert_eq!(run(&["solve-zero", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["validate"]).status.code(), Some(2));
    let missing = run(&["generate", "--instance", "/nonexistent.json", "--out", s(&dir.path().join("x"))]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn broken_instance_is_a_violation() {
    let dir = TempDir::new().unwrap();
    let mut inst: Value = serde_json::from_str(&std::fs::read_to_string(data("ladder2.json")).unwrap()).unwrap();
    inst["drawing"]["edges"].as_array_mut().unwrap().pop();
    let path = dir.path().join("inst.json");
    std::fs::write(&path, inst.to_string()).unwrap();
    let v = run(&["validate", "--instance", s(&path)]);
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(stdout_json(&v)["valid"], false);
}

#[test]
fn outputs_are_bit_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let (pair, tri) = ladder(&dir);
    let again = dir.path().join("again.json");
    assert!(run(&["generate", "--instance", s(&data("ladder2.json")), "--out", s(&again)]).status.success());
    assert_eq!(std::fs::read(&pair).unwrap(), std::fs::read(&again).unwrap());

    let svg = |name: &str| {
        let out = dir.path().join(name);
        let r = run(&["render", "--pair", s(&pair), "--triangulations", s(&tri), "--out", s(&out)]);
        assert_eq!(r.status.code(), Some(0));
        std::fs::read_to_string(out).unwrap()
    };
    let a = svg("a.svg");
    assert_eq!(a, svg("b.svg"));
    assert!(a.starts_with("<?xml"));
    for layer in ["regions", "holes", "dents", "mu-points", "visibility", "triangulation"] {
        assert!(a.contains(&format!("id=\"first-{layer}\"")), "{layer}");
        assert!(a.contains(&format!("id=\"second-{layer}\"")), "{layer}");
    }
}
