use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tightspan"))
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn run(args: &[&str], files: &[&Path]) -> Output {
    let mut c = bin();
    c.args(args);
    for f in files {
        c.arg(f);
    }
    c.output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn all_one() -> Value {
    json!({"labels": ["a", "b", "c"], "matrix": [["0", "1", "1"], ["1", "0", "1"], ["1", "1", "0"]]})
}

fn triangle() -> (Value, Value) {
    (
        json!({"vertices": ["s", "t", "x"],
               "edges": [{"tail": "s", "head": "x", "cap": 1}, {"tail": "x", "head": "t", "cap": 1}, {"tail": "t", "head": "s", "cap": 1}],
               "terminals": ["s", "t"]}),
        json!({"labels": ["s", "t"], "matrix": [["0", "1"], ["0", "0"]]}),
    )
}

#[test]
fn check_tree_on_all_one() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "mu.json", &all_one());
    let o = run(&["check", "tree"], &[&f]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o), json!({"tree_condition": true, "tropical_rank": 2}));
}

#[test]
fn negative_entry_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "neg.json", &json!({"matrix": [["0", "-1"], ["0", "0"]]}));
    let o = run(&["validate"], &[&f]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["error"], "NegativeEntry");
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(run(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(run(&["check", "sideways"], &[]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("broken.json");
    std::fs::write(&p, "{not json").unwrap();
    let o = run(&["validate"], &[&p]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["error"], "InputParseError");
    let o = run(&["validate"], &[&dir.path().join("missing.json")]);
    assert_eq!(stdout_json(&o)["error"], "InputParseError");
}

#[test]
fn flow_verify_q_on_eulerian_triangle() {
    let dir = TempDir::new().unwrap();
    let (net, mu) = triangle();
    let n = write(&dir, "net.json", &net);
    let m = write(&dir, "mu.json", &mu);
    let o = run(&["flow", "verify", "--mode", "Q"], &[&n, &m]);
    assert!(o.status.success());
    assert_eq!(stdout_json(&o), json!({"max": "1", "min": "1", "equal": true}));
    let full = stdout_json(&run(&["flow", "verify", "--mode", "Q", "--report"], &[&n, &m]));
    assert_eq!(full["ok"], true);
    assert!(full["checks"].as_object().unwrap().values().all(|v| v == true));
    assert_eq!(stdout_json(&run(&["flow", "max"], &[&n, &m]))["value"], "1");
    assert_eq!(stdout_json(&run(&["flow", "dual"], &[&n, &m]))["value"], "1");
}

#[test]
fn non_eulerian_mode_q_fails() {
    let dir = TempDir::new().unwrap();
    let n = write(&dir, "net.json", &json!({"vertices": ["s", "t"], "edges": [{"tail": "s", "head": "t", "cap": 3}], "terminals": ["s", "t"]}));
    let m = write(&dir, "mu.json", &json!({"labels": ["s", "t"], "matrix": [["0", "1"], ["0", "0"]]}));
    let o = run(&["flow", "verify", "--mode", "Q"], &[&n, &m]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["error"], "NotEulerian");
    let o = run(&["flow", "verify"], &[&n, &m]);
    assert_eq!(stdout_json(&o), json!({"max": "3", "min": "3", "equal": true}));
}

#[test]
fn complexes_and_realizations() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "mu.json", &all_one());
    let t = stdout_json(&run(&["tightspan"], &[&f]));
    assert_eq!(t["dim"], 2);
    let s = stdout_json(&run(&["section"], &[&f]));
    assert_eq!(s["f_vector"], json!([4, 3]));
    let dot = dir.path().join("r.dot");
    let r = stdout_json(&run(&["realize", "tree", "--dot", dot.to_str().unwrap()], &[&f]));
    assert_eq!(r["vertices"], 4);
    assert!(std::fs::read_to_string(&dot).unwrap().contains("fillcolor"));
    let rf = write(&dir, "r.json", &r);
    let d = stdout_json(&run(&["decompose"], &[&rf]));
    assert_eq!(d["compatible"], true);
    assert_eq!(d["terms"].as_array().unwrap().len(), 3);
    assert_eq!(d["distance"], all_one());
    let o = run(&["realize", "path"], &[&f]);
    assert_eq!(stdout_json(&o)["error"], "DimensionTooHigh");
    let sk = dir.path().join("s.dot");
    let o = run(&["skeleton", "--kind", "section", "--dot", sk.to_str().unwrap()], &[&f]);
    assert_eq!(stdout_json(&o)["edges"].as_array().unwrap().len(), 3);
}

#[test]
fn points_and_geodesics() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "mu.json", &all_one());
    let p = write(&dir, "p.json", &json!({"col": {"a": "2", "b": "2", "c": "2"}, "row": {"a": "2", "b": "2", "c": "2"}}));
    let o = stdout_json(&run(&["retract", "--to", "tight"], &[&f, &p]));
    assert_eq!(o["membership"], "Qplus");
    let q = write(&dir, "q.json", &o["point"]);
    let a = write(&dir, "a.json", &json!({"col": {"a": "0", "b": "1", "c": "1"}, "row": {"a": "0", "b": "1", "c": "1"}}));
    let g = stdout_json(&run(&["geodesic", "--steps", "4"], &[&f, &a, &q]));
    assert_eq!(g["points"].as_array().unwrap().len(), 5);
}

#[test]
fn checks_and_ranks() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "mu.json", &all_one());
    assert_eq!(stdout_json(&run(&["check", "path"], &[&f]))["path_condition"], false);
    assert_eq!(stdout_json(&run(&["check", "dtm"], &[&f]))["directed_tree_metric"], true);
    assert_eq!(stdout_json(&run(&["rank"], &[&f]))["tropical_rank"], 2);
    assert_eq!(stdout_json(&run(&["dim"], &[&f]))["dim_tight_span"], 2);
}

#[test]
fn output_is_deterministic_and_out_flag_writes() {
    let a = run(&["sample", "network", "--seed", "9", "--eulerian"], &[]);
    let b = run(&["sample", "network", "--seed", "9", "--eulerian"], &[]);
    assert_eq!(a.stdout, b.stdout);
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.json");
    let o = bin().args(["sample", "metric", "--n", "4", "--seed", "1", "--out"]).arg(&out).output().unwrap();
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["labels"].as_array().unwrap().len(), 4);
    let o = bin().args(["validate"]).arg(&out).output().unwrap();
    assert_eq!(stdout_json(&o)["metric"], true);
}

#[test]
fn help_documents_formats() {
    let o = bin().args(["flow", "--help"]).output().unwrap();
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"terminals\""));
}
