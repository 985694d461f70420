use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn onevis(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onevis")).args(args).current_dir(dir).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn xq8_layout_verifies_within_grid() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&onevis(&["gen", "xq", "--param", "8", "-o", "xq.json"], d)), 0);
    let o = onevis(&["layout", "xq.json", "-o", "l.json", "--svg", "l.svg", "--report", "r.json"], d);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert!(report["width"].as_i64().unwrap() <= 60);
    assert!(report["height"].as_i64().unwrap() <= 9);
    assert_eq!(report["schema"], "onevis/1");
    let o = onevis(&["verify", "l.json", "xq.json", "--json"], d);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);

    let layout: Value = serde_json::from_str(&fs::read_to_string(d.join("l.json")).unwrap()).unwrap();
    let visible = layout["edges"].as_array().unwrap().iter().filter(|e| e["hidden"] == false).count();
    let svg = fs::read_to_string(d.join("l.svg")).unwrap();
    assert_eq!(svg.matches("<rect ").count(), 10);
    assert_eq!(svg.matches("<line ").count(), visible);
}

#[test]
fn tampered_layout_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    onevis(&["gen", "xq", "--param", "6", "-o", "xq.json"], d);
    onevis(&["layout", "xq.json", "-o", "l.json"], d);
    let mut layout: Value = serde_json::from_str(&fs::read_to_string(d.join("l.json")).unwrap()).unwrap();
    let x = layout["edges"][0]["x"].as_i64().unwrap();
    layout["edges"][0]["x"] = json!(x + 1000);
    fs::write(d.join("t.json"), layout.to_string()).unwrap();
    let o = onevis(&["verify", "t.json", "xq.json"], d);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("endpoint off segment"));
}

#[test]
fn mismatched_ids_and_bad_json_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    onevis(&["gen", "xq", "--param", "6", "-o", "xq.json"], d);
    onevis(&["gen", "xq", "--param", "8", "-o", "xq8.json"], d);
    onevis(&["layout", "xq.json", "-o", "l.json"], d);
    let o = onevis(&["verify", "l.json", "xq8.json"], d);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("IdMismatch"));

    fs::write(d.join("bad.json"), "{\"n\": 3, \"edges\": [").unwrap();
    let o = onevis(&["layout", "bad.json"], d);
    assert_eq!(code(&o), 2);
    let err: Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(err["error"], "ParseError");
    assert_eq!(code(&onevis(&["layout", "missing.json"], d)), 2);
    assert_eq!(code(&onevis(&["frobnicate"], d)), 2);
}

#[test]
fn k7_embedding_is_rejected_by_density() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mut edges = Vec::new();
    for u in 0..7 {
        for v in u + 1..7 {
            edges.push(json!({"u": u, "v": v}));
        }
    }
    let mut rotation = vec![Vec::new(); 7];
    let mut e = 0;
    for u in 0..7usize {
        for v in u + 1..7usize {
            rotation[u].push(2 * e);
            rotation[v].push(2 * e + 1);
            e += 1;
        }
    }
    let emb = json!({"schema": "onevis/1", "n": 7, "edges": edges, "rotation": rotation, "crossings": [[0, 7]]});
    fs::write(d.join("k7.json"), emb.to_string()).unwrap();
    let o = onevis(&["layout", "k7.json"], d);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("DensityViolation"));
    let o = onevis(&["check-density", "k7.json"], d);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("fail"));
}

#[test]
fn witness_families_come_with_a_hint() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&onevis(&["gen", "k7-minus-e", "-o", "k7e.json", "--hint", "hint.json"], d)), 0);
    let o = onevis(&["verify", "hint.json", "k7e.json"], d);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = onevis(&["check-density", "k7e.json", "--json"], d);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["m"].as_u64(), v["tight"].as_bool()), (Some(20), Some(true)));
}

#[test]
fn stats_reports_faces() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    onevis(&["gen", "xq", "--param", "8", "-o", "xq.json"], d);
    let o = onevis(&["stats", "xq.json", "--json"], d);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["crossed_edges"], 16);
    assert_eq!(v["crossings_span_k4"], true);

    onevis(&["gen", "random-plane", "--param", "40", "--seed", "5", "-o", "p.json"], d);
    let v: Value = serde_json::from_str(&stdout(&onevis(&["stats", "p.json", "--json"], d))).unwrap();
    assert_eq!(v["crossings"], 0);
    assert_eq!(v["face_sizes"].as_object().unwrap().keys().collect::<Vec<_>>(), vec!["3"]);

    onevis(&["gen", "random-1planar", "--param", "60", "--seed", "9", "-o", "r.json"], d);
    let v: Value = serde_json::from_str(&stdout(&onevis(&["stats", "r.json", "--augment", "--json"], d))).unwrap();
    assert!(v["max_half_edges"].as_u64().unwrap() <= 8);
}

#[test]
fn layout_bytes_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    onevis(&["gen", "random-1planar", "--param", "50", "--seed", "11", "-o", "r.json"], d);
    onevis(&["layout", "r.json", "-o", "a.json"], d);
    onevis(&["layout", "r.json", "-o", "b.json"], d);
    assert_eq!(fs::read(d.join("a.json")).unwrap(), fs::read(d.join("b.json")).unwrap());
}
