use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn twistlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn explosion_has_a_countervaluation() {
    let out = twistlab(&["taut", "-e", "(p & !p) -> q"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tautology"], false);
    assert_eq!(v["countervaluation"]["p"], "1/2");
    assert_eq!(v["countervaluation"]["q"], "0");
}

#[test]
fn twist_matrix_over_two_atoms() {
    let out = twistlab(&["--atoms", "2", "taut", "-e", "p | ~p", "--matrix", "twist"]);
    assert_eq!(json(&out)["tautology"], true);
}

#[test]
fn leibniz_witness_chain() {
    let out = twistlab(&["witness", "fail-leibniz"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let chain: Vec<&str> = v["values"].as_array().unwrap().iter().map(|x| x["value"].as_str().unwrap()).collect();
    assert_eq!(chain, ["1/2", "1", "1/2", "1/2", "0", "0"]);
}

#[test]
fn regularity_suite_passes() {
    let out = twistlab(&["suite", "regularity"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["check"], "regularity");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["params"]["carrier_size"], 256);
}

#[test]
fn suite_output_is_byte_identical() {
    let args = ["--rank", "2", "--seed", "11", "suite"];
    let first = twistlab(&args);
    let second = twistlab(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(String::from_utf8(first.stdout).unwrap().lines().count(), 13);
}

#[test]
fn closed_and_open_formulas() {
    let out = twistlab(&["--rank", "2", "eval", "-e", "forall x . x = x"]);
    let v = json(&out);
    assert_eq!(v["value"]["symbol"], "1/2");
    assert_eq!(v["designated"], true);

    let out = twistlab(&["--rank", "2", "eval", "-e", "x = empty"]);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["counter_assignment"]["x"].is_number());
}

#[test]
fn store_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v2.txt");
    let path = path.to_str().unwrap();
    let out = twistlab(&["--rank", "2", "--store", path, "enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["elements"], 4);
    let dumped = fs::read_to_string(path).unwrap();
    let out = twistlab(&["--store", path, "eval", "-e", "forall x . ~(x in x)"]);
    assert_eq!(json(&out)["carrier_size"], 4);
    assert_eq!(fs::read_to_string(path).unwrap(), dumped);
}

#[test]
fn proofs_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let good = "\
1. (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p)) ; Ax2
2. p -> ((p -> p) -> p) ; Ax1
3. (p -> (p -> p)) -> (p -> p) ; MP 2 1
4. p -> (p -> p) ; Ax1
5. p -> p ; MP 4 3
";
    let path = dir.path().join("id.proof");
    fs::write(&path, good).unwrap();
    let out = twistlab(&["prove", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["conclusion"], "p -> p");

    fs::write(&path, good.replace("MP 4 3", "MP 3 4")).unwrap();
    let out = twistlab(&["prove", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["first_bad_line"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(twistlab(&["suite", "no-such-check"]).status.code(), Some(2));
    assert_eq!(twistlab(&["taut", "-e", "p &"]).status.code(), Some(2));
    assert_eq!(twistlab(&["witness", "nothing"]).status.code(), Some(2));
    assert_eq!(twistlab(&["--semantics", "classical", "algebra"]).status.code(), Some(2));
    assert_eq!(twistlab(&["--rank", "5", "enumerate"]).status.code(), Some(3));
    assert_eq!(twistlab(&["--rank", "5", "suite", "check-names"]).status.code(), Some(3));
}

#[test]
fn text_output() {
    let out = twistlab(&["--format", "text", "algebra"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("algebra 2^1 with 2 elements"), "{text}");
}
