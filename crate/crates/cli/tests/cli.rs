use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn evoalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evoalg"))
        .args(args)
        .env_remove("EVOALG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema() -> JSONSchema {
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/report.schema.json"),
    )
    .unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).expect("valid schema")
}

/// Runs with `--json`, validates the report and returns it.
fn report(args: &[&str], code: i32) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = evoalg(&full);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    let value: Value = serde_json::from_slice(&out.stdout).unwrap();
    if let Err(errors) = schema().validate(&value) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    }
    value
}

fn p(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn analyze_examples() {
    let r = report(&["analyze", &p("e1.json")], 0);
    assert_eq!(r["results"]["nilindex"]["index"], 17);
    assert_eq!(r["results"]["index_set"], serde_json::json!([[1, 3], [1, 4]]));
    assert_eq!(r["results"]["eta"], 2);

    let r = report(&["analyze", &p("zero3.json")], 0);
    assert_eq!(r["results"]["nilindex"]["index"], 2);
    assert_eq!(r["results"]["max_nilindex_form"], false);

    let r = report(&["analyze", &p("chain4.json")], 0);
    assert_eq!(r["results"]["nilindex"]["index"], 9);
    assert_eq!(r["results"]["max_nilindex_form"], true);
    assert_eq!(r["results"]["index_set"], serde_json::json!([]));
    assert_eq!(r["results"]["eta"], Value::Null);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn derivations_both_match() {
    let out = evoalg(&["derivations", &p("e1.json"), "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().any(|l| l == "MATCH"));
    let r = report(&["derivations", &p("e1.json")], 0);
    assert_eq!(r["results"]["dim"], 1);
    assert_eq!(r["results"]["comparison"], "MATCH");
    let gen = &r["results"]["solver"]["generators"][0];
    assert_eq!(gen[0][4], "1");
    let r = report(&["derivations", "--method", "solver", &p("zero3.json")], 0);
    assert_eq!(r["results"]["dim"], 9);
}

#[test]
fn automorphism_report() {
    let r = report(&["automorphisms", &p("e1.json")], 0);
    assert_eq!(r["results"]["case"], "root_of_unity");
    assert_eq!(r["results"]["eta"], 2);
    assert_eq!(r["results"]["alpha_solutions"], serde_json::json!(["-1", "1"]));
    let r = report(&["automorphisms", &p("chain4.json")], 0);
    assert_eq!(r["results"]["case"], "free");
    assert_eq!(r["results"]["alpha_solutions"], Value::Null);
}

#[test]
fn isomorphism_verdicts() {
    let out = evoalg(&["isomorphic", &p("e1.json"), &p("e2.json")]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("NOT ISOMORPHIC"));
    let r = report(&["isomorphic", &p("e1.json"), &p("e1.json")], 0);
    assert_eq!(r["results"]["verdict"], "ISOMORPHIC");
    report(&["isomorphic", &p("e2.json"), &p("e1.json")], 4);
}

#[test]
fn check_kinds() {
    let r = report(&["check", &p("e1.json"), "--map", &p("e15.json"), "--kind", "2local"], 0);
    assert_eq!(r["results"]["result"]["verdict"], "accepted");
    let r = report(&["check", &p("chain4.json"), "--map", &p("identity4.json"), "--kind", "2local"], 4);
    assert_eq!(r["results"]["result"]["witness"].as_array().unwrap().len(), 2);
    // n = 2: diag(1, 3) is a local derivation, outside the stated families.
    let r = report(&["check", &p("n2.json"), "--map", &p("n2_diag13.json"), "--kind", "local-derivation"], 0);
    assert_eq!(r["results"]["result"]["method"], "definitional");
    assert_eq!(r["results"]["cross_check"]["verdict"], "rejected");
    let r = report(&["check", &p("n2.json"), "--map", &p("n2_square.json"), "--kind", "local-automorphism"], 0);
    assert_eq!(r["results"]["result"]["verdict"], "accepted");
    let r = report(&["check", &p("n2.json"), "--map", &p("n2_diag13.json"), "--kind", "local-automorphism"], 4);
    assert_eq!(r["results"]["result"]["witness"], serde_json::json!(["0", "1"]));
    report(&["check", &p("n2.json"), "--map", &p("n2_diag13.json"), "--kind", "derivation"], 4);
    report(&["check", &p("e1.json"), "--map", &p("e15.json"), "--kind", "automorphism"], 4);
}

#[test]
fn reconstruct_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("alg.json");
    let out_str = out_path.display().to_string();
    let r = report(
        &["reconstruct", "--spec", &p("spec_mixed5.json"), "--subdiag", "2,-1,3,1/2", "--output", &out_str],
        0,
    );
    assert_eq!(r["results"]["algebra"]["n"], 5);
    let d = report(&["derivations", "--method", "closed", &out_str], 0);
    assert_eq!(d["results"]["spec"], serde_json::json!(["3/2", "-4", "7"]));

    // Zero spec with unit superdiagonal is the chain.
    let out = evoalg(&["reconstruct", "--spec", &p("spec_zero4.json"), "--subdiag", "1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let file: Value = serde_json::from_slice(&out.stdout).unwrap();
    let chain: Value = serde_json::from_str(&std::fs::read_to_string(data("chain4.json")).unwrap()).unwrap();
    assert_eq!(file, chain);
}

#[test]
fn exit_codes_for_bad_input() {
    let out = evoalg(&["analyze", &p("bad_rational.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad_rational.json:4:"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"n\": 2,\n  \"matrix\": [[\"0\", \"1\"],\n  [\"0\" \"0\"]]\n}\n").unwrap();
    let out = evoalg(&["analyze", &broken.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains(":4:"));

    let ragged = dir.path().join("ragged.json");
    std::fs::write(&ragged, r#"{"n": 2, "matrix": [["0"], ["0", "0"]]}"#).unwrap();
    assert_eq!(evoalg(&["analyze", &ragged.display().to_string()]).status.code(), Some(2));

    let out = evoalg(&["automorphisms", &p("zero3.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("superdiagonal"));
    assert_eq!(evoalg(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_and_seeded() {
    let args = ["--json", "check", &p("chain4.json"), "--map", &p("identity4.json"), "--kind", "local-derivation"];
    let a = evoalg(&args);
    let b = evoalg(&args);
    assert_eq!(a.stdout, b.stdout);
    let with_seed = Command::new(env!("CARGO_BIN_EXE_evoalg"))
        .args(args)
        .env("EVOALG_SEED", "99")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&with_seed.stdout).unwrap();
    assert_eq!(v["seed"], 99);
}

#[test]
fn help_lists_commands() {
    let out = evoalg(&["--help"]);
    let text = stdout(&out);
    for cmd in ["analyze", "derivations", "automorphisms", "isomorphic", "check", "reconstruct"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
}

#[test]
fn schema_rejects_float_rationals() {
    let mut r = report(&["automorphisms", &p("e1.json")], 0);
    r["results"]["alpha_solutions"] = serde_json::json!([-1.0, 1.0]);
    assert!(!schema().is_valid(&r));
}
