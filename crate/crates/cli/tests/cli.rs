use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use bipermute::matrix::{Matrix, MatrixFamily};
use bipermute::{Rational, Scalar, Semiring};
use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bipermute"));
    c.env_remove("BIPERMUTE_SEED");
    c
}

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = bin().args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), json, out)
}

fn write_json(dir: &TempDir, name: &str, v: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn boolean_axioms_pass() {
    let (code, v, _) = run(&["axioms", "--inline", r#"{"family": "boolean"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passed"], true);
}

#[test]
fn corrupted_table_fails_with_counterexample() {
    let table = r#"{"family": "table", "add": [[0, 1], [1, 1]], "mul": [[1, 0], [0, 1]]}"#;
    let (code, v, _) = run(&["axioms", "--inline", table]);
    assert_eq!(code, 1);
    let failing: Vec<&Value> = v["result"]["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failing.is_empty());
    assert_eq!(failing[0]["counterexample"].as_array().unwrap().len(), 3);
}

#[test]
fn sampled_axioms_on_trunc() {
    let (code, v, _) = run(&["axioms", "--inline", r#"{"family": "trunc", "x": 1, "y": 2}"#, "--trials", "300"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["mode"]["mode"], "sampled");
}

#[test]
fn semiring_file_source() {
    let dir = TempDir::new().unwrap();
    let path = write_json(&dir, "s.json", &json!({"family": "trunc", "x": "1", "y": "3"}));
    let (code, v, _) = run(&["classify-semiring", "--semiring", &path]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["canonical"], json!({"T1": "3"}));
    assert_eq!(v["result"]["max_element_order"], 3);
}

#[test]
fn classify_element_in_trunc() {
    let (code, v, _) = run(&["classify-element", "--inline", r#"{"family": "trunc", "x": 1, "y": "5/2"}"#, "--element", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"]["order"], 3);
    assert_eq!(v["result"]["monogenic"], json!({"kind": "trunc_nat", "k": 3}));
}

#[test]
fn witness_families() {
    let (code, v, _) = run(&["witness", "--family", "u3_nmax", "--m", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["matrices"].as_array().unwrap().len(), 6);
    assert!(v["result"]["metadata"]["closed_form"].is_object());

    let (code, v, _) = run(&["witness", "--family", "m3_trunc", "--z", "3", "--epsilon", "1/2", "--m", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["matrices"].as_array().unwrap().len(), 5);

    let (code, _, out) = run(&["witness", "--family", "m3_trunc", "--z", "3", "--epsilon", "5"]);
    assert_eq!(code, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("epsilon"));
}

#[test]
fn witness_output_is_identity_only() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("w.json");
    let (code, ..) = run(&["witness", "--family", "u3_nmax", "--m", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let input = path.to_str().unwrap();
    let (code, v, _) = run(&["permute", "--input", input]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["witness"]["kind"], "identity_only");
    let (_, v, _) = run(&["permute", "--input", input, "--mode", "exhaustive"]);
    assert_eq!(v["result"]["identity_only"], true);
    let (_, v, _) = run(&["product", "--input", input]);
    assert_eq!(v["result"]["length"], 5);
}

fn matrices_file(dir: &TempDir, seq: &[Matrix]) -> String {
    write_json(dir, "seq.json", &serde_json::to_value(seq).unwrap())
}

#[test]
fn equal_pair_is_found() {
    let s = Arc::new(Semiring::boolean());
    let m = |e: [usize; 4]| Matrix::new(s.clone(), MatrixFamily::Full, 2, e.iter().map(|&i| Scalar::Atom(i)).collect()).unwrap();
    let seq = [m([1, 0, 1, 1]), m([0, 1, 0, 0]), m([1, 0, 1, 1])];
    let dir = TempDir::new().unwrap();
    let (code, v, _) = run(&["permute", "--input", &matrices_file(&dir, &seq)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["witness"]["kind"], "found");
    assert_eq!(v["result"]["witness"]["strategy"], "equal_pair");
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn pattern_sequence_gets_a_transposition() {
    let s = Arc::new(Semiring::trunc(Rational::from(1), Rational::from(3)).unwrap());
    let seq: Vec<Matrix> = (0..11i64)
        .map(|i| {
            let a = Scalar::Rat(Rational::new(2 + (i * 5) % 4, 2));
            let b = Scalar::Rat(Rational::new(2 + (i * 3) % 5, 2));
            Matrix::from_rows(s.clone(), MatrixFamily::Full, vec![vec![Scalar::int(0), a], vec![Scalar::NegInf, b]]).unwrap()
        })
        .collect();
    let dir = TempDir::new().unwrap();
    let (code, v, _) = run(&["permute", "--input", &matrices_file(&dir, &seq), "--mode", "pattern"]);
    assert_eq!(code, 0);
    let w = &v["result"]["pattern"]["witness"];
    assert_eq!(w["kind"], "found");
    assert!(matches!(w["shape"].as_str(), Some("transposition" | "adjacent_transposition")));
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn chain_quotient_verifies() {
    let (code, v, _) = run(&["quotient", "--inline", r#"{"family": "chain", "size": 12}"#, "--classes", r#"[{"atom": 3}, {"atom": 7}]"#]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["report"]["passed"], true);
}

#[test]
fn iso_with_distinguisher() {
    let (code, v, _) = run(&["iso", "--x", "2", "--y", "5", "--against", "1,3", "--trials", "200"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["classification"]["canonical"], "T1_2p5");
    assert_eq!(v["result"]["distinguisher"]["isomorphic"], false);
}

#[test]
fn verify_all_single_item_is_deterministic() {
    let args = ["verify-all", "--item", "kerperm", "--trials", "2", "--seed", "7"];
    let (code, v, first) = run(&args);
    assert_eq!(code, 0);
    let items = v["result"]["items"].as_array().unwrap();
    assert_eq!(items.len(), 1);
    assert_eq!(items[0]["item"], "kerperm");
    assert_eq!(items[0]["fast"], true);
    let (_, _, second) = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&first.stderr).starts_with("PASS kerperm"));
}

#[test]
fn unknown_item_is_an_input_error() {
    let (code, ..) = run(&["verify-all", "--item", "nope"]);
    assert_eq!(code, 2);
}

#[test]
fn seed_env_applies_only_without_flag() {
    let seed_of = |env: Option<&str>, flag: Option<&str>| {
        let mut c = bin();
        c.args(["iso", "--x", "1", "--y", "2", "--trials", "5"]);
        if let Some(e) = env {
            c.env("BIPERMUTE_SEED", e);
        }
        if let Some(f) = flag {
            c.args(["--seed", f]);
        }
        let v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["seed"].as_u64().unwrap()
    };
    assert_eq!(seed_of(Some("41"), None), 41);
    assert_eq!(seed_of(Some("41"), Some("9")), 9);
    assert_eq!(seed_of(None, None), bipermute::permutability::DEFAULT_SEED);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("r.json");
    let out = bin().args(["axioms", "--inline", r#"{"family": "chain", "size": 3}"#, "--out"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&path)).unwrap()).unwrap();
    assert_eq!(v["command"], "axioms");
}
