use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use catbase_cli::input::{parse_input, serialize_input};

fn catbase(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_catbase"))
        .args(args)
        .env_remove("CATBASE_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("catbase-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const SIER: &str = r#"{"n":2,"regions":[[1],[0,1]]}"#;
const DISC3: &str = r#"{"n":3,"regions":[[0],[1],[2],[0,1,2]]}"#;
const CONSTANT_X: &str = r#"{"[]":[],"[0]":[0,1,2],"[1]":[0,1,2],"[2]":[0,1,2],"[0,1]":[0,1,2],"[0,2]":[0,1,2],"[1,2]":[0,1,2],"[0,1,2]":[0,1,2]}"#;

#[test]
fn sier_equiv_with_cluster_passes() {
    let out = catbase(&["equiv", "--operator", "cluster", "--json"], Some(SIER));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["meager_equal"], true);
    assert_eq!(r["baire_equal"], true);
}

#[test]
fn disc3_constant_operator_fails_with_witness() {
    let base = fixture("disc3.json", DISC3);
    let op = fixture("constant.json", CONSTANT_X);
    let out = catbase(
        &["equiv", base.to_str().unwrap(), "--operator", op.to_str().unwrap(), "--json"],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["hypothesis_holds"], false);
    assert_eq!(r["baire_equal"], false);
    assert_eq!(r["mismatches"][0]["direction"], "baire_only_in_base");
    assert_eq!(r["mismatches"][0]["set"], serde_json::json!([0]));
}

#[test]
fn exhaustive_sweep_at_three_passes() {
    let out = catbase(&["sweep", "--n", "3", "--exhaustive", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["violations"], serde_json::json!([]));
}

#[test]
fn malformed_input_is_an_input_error() {
    let out = catbase(&["validate"], Some("{\"n\":2,"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed input"));
}

#[test]
fn invalid_base_exits_one() {
    let out = catbase(&["validate", "--json"], Some(r#"{"n":3,"regions":[[0,1,2],[0,1],[1,2]]}"#));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["violations"][0]["kind"], "Axiom2ii");
}

#[test]
fn invalid_operator_exits_one() {
    let op = fixture("identity2.json", r#"{"[]":[],"[0]":[0],"[1]":[1],"[0,1]":[0,1]}"#);
    let out = catbase(&["equiv", "--operator", op.to_str().unwrap()], Some(SIER));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oversized_sweep_is_a_capacity_error() {
    let out = catbase(&["sweep", "--n", "9", "--random"], None);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tiny_budget_is_a_capacity_error() {
    let out = catbase(&["validate", "--budget", "1"], Some(DISC3));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn witness_reports_decomposition() {
    let out = catbase(&["witness", "--set", "[0]", "--json"], Some(SIER));
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["meager"], true);
    assert_eq!(r["baire_decomposition"]["h"], serde_json::json!([]));
    assert_eq!(r["baire_decomposition"]["r"], serde_json::json!([0]));
}

#[test]
fn topology_prints_basic_topology() {
    let out = catbase(&["topology", "--json"], Some(SIER));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["opens"], serde_json::json!([[], [1], [0, 1]]));
}

#[test]
fn text_output_is_stable() {
    let a = catbase(&["classify"], Some(SIER));
    let b = catbase(&["classify", "--text"], Some(SIER));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8_lossy(&a.stdout).into_owned();
    let line = text.lines().find(|l| l.starts_with("meager ")).unwrap();
    assert!(line.ends_with("  [[],[0]]"), "{line}");
}

#[test]
fn document_round_trips() {
    let text = r#"{"n":2,"regions":[[1],[0,1]],"operator":{"[]":[],"[0]":[],"[1]":[0,1],"[0,1]":[0,1]},"topology":[[],[1],[0,1]]}"#;
    let doc = parse_input(text).unwrap();
    assert_eq!(parse_input(&serialize_input(&doc)).unwrap(), doc);
}
