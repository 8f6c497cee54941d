use std::path::PathBuf;
use std::process::{Command, Output};

use leavitt_core::corpus::bundled_graph;
use leavitt_core::kernel::{ElementMatrix, Leavitt, Witness};
use leavitt_core::monoid::{EqualityChain, Monoid};
use serde_json::Value;

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../corpus");
    p.push(format!("{name}.json"));
    p.display().to_string()
}

fn leavitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = leavitt(&all);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is json");
    (value, out.status.code().expect("exit code"))
}

fn text(args: &[&str]) -> (String, i32) {
    let out = leavitt(args);
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn matrix(alg: &Leavitt, v: &Value) -> ElementMatrix {
    let rows = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| alg.parse(x.as_str().unwrap()).unwrap()).collect())
        .collect();
    alg.matrix(rows).unwrap()
}

/// Re-checks a printed witness from its printed matrices alone.
fn reverify(graph: &str, report: &Value) -> bool {
    let alg = Leavitt::new(bundled_graph(graph).unwrap());
    let w = Witness {
        alpha: matrix(&alg, &report["alpha"]),
        beta: matrix(&alg, &report["beta"]),
    };
    alg.verify_precsim(&matrix(&alg, &report["x"]), &matrix(&alg, &report["y"]), &w) == Ok(true)
}

#[test]
fn classifies_the_named_graphs() {
    let (v, code) = json(&["classify", &corpus("rose2"), &corpus("loop"), &corpus("twin-roses")]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "leavitt.batch/1");
    let r = v["results"].as_array().unwrap();
    assert_eq!(r[0]["schema"], "leavitt.classification/1");
    assert_eq!(r[0]["verdicts"]["purely_infinite_simple"], true);
    assert_eq!(r[1]["verdicts"], serde_json::json!({"simple": false, "purely_infinite": false, "purely_infinite_simple": false}));
    assert_eq!(r[1]["purely_infinite"]["condition_k_and_cycles"]["counterexample"]["vertex"], "v");
    assert_eq!(r[2]["verdicts"]["purely_infinite"], true);
    assert_eq!(r[2]["verdicts"]["simple"], false);
    let (t, _) = text(&["classify", &corpus("loop")]);
    assert!(t.contains("Condition (K) fails at v"), "{t}");
}

#[test]
fn a_bad_file_does_not_abort_the_batch() {
    let (v, code) = json(&["classify", "missing.json", &corpus("rose2")]);
    assert_eq!(code, 2);
    let r = v["results"].as_array().unwrap();
    assert_eq!(r[0]["schema"], "leavitt.error/1");
    assert_eq!(r[1]["verdicts"]["simple"], true);
}

#[test]
fn corrupted_graph_files_are_input_errors() {
    let dir = std::env::temp_dir().join(format!("leavitt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"vertices":["v"],"edges":[{"id":"e","src":"x","rng":"v"}]}"#).unwrap();
    let (t, code) = text(&["selfcheck", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(t.is_empty() || t.starts_with("error"));
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(text(&["classify", bad.to_str().unwrap()]).1, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn witnesses_are_printed_verified() {
    let (v, code) = json(&["witness", &corpus("rose2"), "vertex-pi", "v"]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["alpha"], serde_json::json!([["g(e1)"], ["g(e2)"]]));
    assert_eq!(v["beta"], serde_json::json!([["e1", "e2"]]));
    assert!(reverify("rose2", &v));

    let (v, code) = json(&["witness", &corpus("rose2"), "reduce", "v + e1"]);
    assert_eq!(code, 0);
    assert_eq!(v["vertex"], "v");
    assert!(reverify("rose2", &v));

    let (v, _) = json(&["witness", &corpus("toeplitz"), "path-subeq", "f"]);
    assert!(reverify("toeplitz", &v));

    let (v, code) = json(&["witness", &corpus("twin-roses"), "proper-inf", "a + c - 1/2*w"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "found");
    assert!(reverify("twin-roses", &v));
}

#[test]
fn kernel_preconditions_are_explained() {
    let (v, code) = json(&["witness", &corpus("loop"), "vertex-pi", "v"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("|CSP(v)| < 2"));
    assert_eq!(json(&["witness", &corpus("rose2"), "reduce", "e1 - e1"]).1, 2);
    assert_eq!(json(&["witness", &corpus("rose2"), "reduce", "e9"]).1, 2);
}

fn chain(m: &Monoid, v: &Value) -> EqualityChain {
    EqualityChain {
        steps: v.as_array().unwrap().iter().map(|s| m.parse(s.as_str().unwrap()).unwrap()).collect(),
    }
}

#[test]
fn monoid_queries() {
    let rose2 = Monoid::new(&bundled_graph("rose2").unwrap());
    let (v, code) = json(&["monoid", &corpus("rose2"), "eq: v = 2v"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "found");
    assert_eq!(v["stats"]["depth"], 1);
    let c = chain(&rose2, &v["witness"]["chain"]);
    assert!(rose2.verify_chain(&c, &rose2.parse("v").unwrap(), &rose2.parse("2v").unwrap()));

    let (v, _) = json(&["monoid", &corpus("rose2"), "23div: v"]);
    assert_eq!((&v["witness"]["x"], &v["witness"]["y"]), (&Value::from("v"), &Value::from("v")));
    let c = chain(&rose2, &v["witness"]["chain"]);
    assert!(rose2.verify_chain(&c, &rose2.parse("5v").unwrap(), &rose2.parse("v").unwrap()));

    let (v, code) = json(&["monoid", &corpus("free2"), "leq: u <= v"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "unknown");

    let (v, code) = json(&["monoid", &corpus("point"), "23div: w"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("irreducible"));

    let (v, _) = json(&["monoid", &corpus("point"), "fred: 2; 3w; 4w; 2w"]);
    assert_eq!(v["witness"]["parts"], serde_json::json!(["w", "0", "2*w"]));

    let (v, _) = json(&["monoid", &corpus("twin-roses"), "project: v + 2w mod {w}"]);
    assert_eq!(v["witness"]["image"], "v");
    assert_eq!(json(&["monoid", &corpus("rose2"), "eq: v"]).1, 2);
}

#[test]
fn ideals_lists_the_lattice() {
    let (v, code) = json(&["ideals", &corpus("twin-roses")]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["kind"], "ideals");
    assert_eq!(r["sets"], serde_json::json!([[], ["w"], ["v", "w"]]));
    assert_eq!(r["inclusions"], serde_json::json!([[0, 1], [1, 2]]));
    let (v, _) = json(&["ideals", &corpus("loop")]);
    assert_eq!(v["results"][0]["kind"], "graded_ideals");
}

#[test]
fn selfcheck_passes_on_the_corpus() {
    let (v, code) = json(&["selfcheck", &corpus("rose2"), &corpus("toeplitz"), "--seed", "7", "--trials", "20"]);
    assert_eq!(code, 0);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["passed"], true, "{r}");
    }
}

#[test]
fn json_output_is_deterministic() {
    let args = ["selfcheck", &corpus("twin-roses"), "--seed", "3", "--trials", "10", "--format", "json"];
    assert_eq!(leavitt(&args).stdout, leavitt(&args).stdout);
    let args = ["witness", &corpus("twin-roses"), "reduce", "a;g(b) + 2*c.d", "--format", "json"];
    assert_eq!(leavitt(&args).stdout, leavitt(&args).stdout);
}

#[test]
fn bound_flags_are_validated() {
    assert_eq!(text(&["monoid", &corpus("rose2"), "eq: v = 2v", "--eq-depth", "0"]).1, 2);
    let (v, _) = json(&["monoid", &corpus("rose2"), "eq: v = 3v", "--eq-depth", "1"]);
    assert_eq!(v["verdict"], "unknown");
}
