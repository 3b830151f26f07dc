use std::path::PathBuf;
use std::process::Command;

use nonrep::cli::{run, EXIT_FAILS, EXIT_INVALID, EXIT_OK, EXIT_UNDECIDED};
use serde_json::{json, Value};
use tempfile::TempDir;

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, contents: &str) -> String {
        let path: PathBuf = self.0.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }
}

fn nonrep(args: &[&str]) -> (i32, Value) {
    let out = run(std::iter::once("nonrep").chain(args.iter().copied()));
    (out.code, out.document.expect("every run emits a document"))
}

const P4: &str = "p 4 3\ne 1 2\ne 2 3\ne 3 4\n";
const C4: &str = "p 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n";
const K4: &str = "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
const C4_PARTITION: &str = r#"{"kind": "t-partition",
    "tree": {"nodes": ["x", "y"], "edges": [["x", "y"]], "root": "y"},
    "bags": {"x": [0, 1], "y": [2, 3]}}"#;

#[test]
fn verify_reports_the_witness() {
    let f = Files::new();
    let g = f.write("p4.txt", P4);
    let (code, doc) = nonrep(&["verify", &g, &f.write("bad.json", r#"{"colours": [1, 2, 1, 2]}"#)]);
    assert_eq!(code, EXIT_FAILS);
    assert_eq!(doc["witness"], json!([0, 1, 2, 3]));
    assert_eq!(doc["kind"], "verify");
    assert_eq!(doc["version"], nonrep::VERSION);

    let (code, doc) = nonrep(&["verify", &g, &f.write("good.json", "[0, 1, 2, 0]")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["witness"], Value::Null);
    assert_eq!(doc["mode"], "exact");

    let (code, doc) = nonrep(&["verify", &g, &f.write("bad2.json", "[1, 2, 1, 2]"), "--t-max", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["mode"], "bounded");
    assert_eq!(doc["t_max"], 1);
}

#[test]
fn pi_of_k4() {
    let f = Files::new();
    let (code, doc) = nonrep(&["pi", &f.write("k4.txt", K4)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["pi"], 4);
    let (code, doc) = nonrep(&["pi", &f.write("k4b.txt", K4), "--k", "3"]);
    assert_eq!(code, EXIT_FAILS);
    assert_eq!(doc["status"], "above-bound");
    let (code, doc) = nonrep(&["pi", &f.write("k4c.txt", K4), "--budget", "2"]);
    assert_eq!(code, EXIT_UNDECIDED);
    assert_eq!(doc["status"], "budget-exhausted");
}

#[test]
fn transform_on_c4() {
    let f = Files::new();
    let (code, doc) = nonrep(&["transform", &f.write("c4.txt", C4), &f.write("tp.json", C4_PARTITION), "--t", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["output_adhesion"], 2);
    assert_eq!(doc["input_adhesion"], 2);
    assert_eq!(doc["hypothesis_met"], true);
    assert_eq!(doc["decomposition"]["bags"], json!({"x": [0, 1], "y": [0, 1, 2, 3]}));
    assert_eq!(doc["torso_profiles"]["y"]["c"], 0);
}

#[test]
fn transformed_decomposition_feeds_other_commands() {
    let f = Files::new();
    let g = f.write("c4.txt", C4);
    let (_, doc) = nonrep(&["transform", &g, &f.write("tp.json", C4_PARTITION)]);
    let td = f.write("td.json", &doc["decomposition"].to_string());
    assert_eq!(nonrep(&["validate", &g, &td]).0, EXIT_OK);
    let (code, doc) = nonrep(&["adhesion", &g, &td]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["adhesion"], 2);
    assert_eq!(doc["width"], 3);
    let (code, doc) = nonrep(&["torso", &g, &td, "--node", "x", "--d", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["graph"], json!({"n": 2, "edges": [[0, 1]]}));
    assert_eq!(doc["degree_profile"]["c"], 2);
    let (code, doc) = nonrep(&["compose", &g, &td]);
    assert_eq!(code, EXIT_OK, "{doc}");
    assert!(doc["palette_size"].as_u64().unwrap() <= doc["palette_bound"].as_u64().unwrap());
}

#[test]
fn partition_torso_collapses_sides() {
    let f = Files::new();
    let (code, doc) = nonrep(&["torso", &f.write("c4.txt", C4), &f.write("tp.json", C4_PARTITION), "--node", "x"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["graph"], json!({"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}));
    assert_eq!(doc["labels"], json!([{"vertex": 0}, {"vertex": 1}, {"side": "y"}]));
}

#[test]
fn validate_flags_bad_decompositions() {
    let f = Files::new();
    let td = r#"{"kind": "tree-decomposition", "tree": {"nodes": [0, 1], "edges": [[0, 1]]},
        "bags": {"0": [0, 1], "1": [2, 3]}}"#;
    let (code, doc) = nonrep(&["validate", &f.write("c4.txt", C4), &f.write("td.json", td)]);
    assert_eq!(code, EXIT_FAILS);
    assert_eq!(doc["valid"], false);
    assert!(!doc["violations"].as_array().unwrap().is_empty());
}

#[test]
fn colouring_strategies() {
    let f = Files::new();
    let star = f.write("star.txt", "p 5 4\ne 1 2\ne 1 3\ne 1 4\ne 1 5\n");
    let (code, doc) = nonrep(&["colour-degree", &star, "--d", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["private"], json!([0]));
    let (code, doc) = nonrep(&["colour-resample", &f.write("p4.txt", P4), "--palette", "3", "--seed", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["status"], "success");
    let (code, doc) = nonrep(&["colour-resample", &f.write("k4.txt", K4), "--palette", "2", "--cap", "5"]);
    assert_eq!(code, EXIT_UNDECIDED);
    assert_eq!(doc["status"], "cap-reached");
    let (code, doc) = nonrep(&["colour-path", "12"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["colours"], json!([0, 1, 2, 0, 2, 1, 0, 1, 2, 1, 0, 2]));
}

#[test]
fn pipeline_certificate() {
    let f = Files::new();
    let (code, doc) =
        nonrep(&["pipeline", &f.write("c4.txt", C4), &f.write("tp.json", C4_PARTITION), "--t", "2", "--seed", "3"]);
    assert_eq!(code, EXIT_OK, "{doc}");
    assert_eq!(doc["arithmetic"]["d"], 24);
    assert_eq!(doc["arithmetic"]["claimed_bound"], (2 + 4 * 576) * 256);
    assert_eq!(doc["within_claimed_bound"], true);
    assert_eq!(doc["colouring"]["witness"], Value::Null);
}

#[test]
fn containment_queries() {
    let f = Files::new();
    let c4 = f.write("c4.txt", C4);
    let claw = f.write("claw.txt", "p 4 3\ne 1 2\ne 1 3\ne 1 4\n");
    let (code, doc) = nonrep(&["contains", &c4, &claw]);
    assert_eq!(code, EXIT_FAILS);
    assert_eq!(doc["status"], "none");
    let k4 = f.write("k4.txt", K4);
    let (code, doc) = nonrep(&["contains", &k4, &k4, "--mode", "topological-minor"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(doc["branch_map"], json!({"0": 0, "1": 1, "2": 2, "3": 3}));
    assert_eq!(doc["paths"]["0-1"], json!([0, 1]));
    let (_, doc) = nonrep(&["contains", &k4, &k4, "--strong"]);
    assert_eq!(doc["mode"], "strong-immersion");
}

#[test]
fn invalid_input_exits_with_two() {
    let f = Files::new();
    let (code, doc) = nonrep(&["pi", &f.write("loop.txt", "p 2 1\ne 1 1\n")]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(doc["kind"], "error");
    assert!(doc["error"].as_str().unwrap().contains("line 2"));
    let (code, _) = nonrep(&["pi", "/nonexistent/graph.txt"]);
    assert_eq!(code, EXIT_INVALID);
    let (code, doc) = nonrep(&["frobnicate"]);
    assert_eq!(code, EXIT_INVALID);
    assert_eq!(doc["kind"], "error");
    let (code, _) = nonrep(&["transform", &f.write("c4.txt", C4), &f.write("tp.json", C4_PARTITION), "--root", "z"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn binary_output_is_stable() {
    let f = Files::new();
    let g = f.write("c4.txt", C4);
    let tp = f.write("tp.json", C4_PARTITION);
    let once = || {
        Command::new(env!("CARGO_BIN_EXE_nonrep"))
            .args(["pipeline", &g, &tp, "--t", "2"])
            .output()
            .unwrap()
    };
    let (a, b) = (once(), once());
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["kind"], "pipeline");

    let bad = Command::new(env!("CARGO_BIN_EXE_nonrep")).arg("frobnicate").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INVALID));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("Usage"));
}
