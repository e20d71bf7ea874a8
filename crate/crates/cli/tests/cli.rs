use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qsh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsh")).args(args).output().expect("qsh runs")
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs `qsh`, checks the exit code and validates stdout against the command's schema.
fn report(args: &[&str], code: i32) -> Value {
    let out = qsh(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let validator = jsonschema::validator_for(&schema(args[0])).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:#?}");
    v
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("qsh-cli-test-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn verify_catalog_cases() {
    let v = report(&["verify", "ns-even:2,1,0"], 0);
    assert_eq!(v["record"]["dim_g"], 15);
    assert_eq!(v["matches_expected"], true);
    let v = report(&["verify", "m1:2"], 0);
    assert!(v["record"]["Z0"].is_array());
    let v = report(&["verify", "m2", "--n", "3", "--p", "2", "--q", "1"], 0);
    assert_eq!(v["tag"], "m2:3,2,1");
}

#[test]
fn verify_rejects_bad_input() {
    assert_eq!(qsh(&["verify", "ns-even:3,1,0"]).status.code(), Some(2));
    assert_eq!(qsh(&["verify", "m2", "--n", "3", "--p", "1"]).status.code(), Some(2));
    let bad = temp_file("bad.json", "{ \"tau\": { \"n\": 2, ");
    assert_eq!(qsh(&["verify", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    let _ = std::fs::remove_file(bad);
}

#[test]
fn verify_generator_files() {
    let good = r#"{"tau":{"n":2,"a":["0","1","0","0"],"A":{"rows":2,"cols":2,"entries":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]},"d":"-1"},"form":{"n":2,"variant":"skew-hermitian"}}"#;
    let path = temp_file("m1.json", good);
    let v = report(&["verify", "--input", path.to_str().unwrap()], 0);
    assert_eq!(v["record"]["dim_g"], 15);
    assert!(v["tag"].is_null());

    // (a, A, d) = (0, 0, 1) fails the generator equation: a failed check, not bad input
    let failing = good.replace(r#""a":["0","1","0","0"]"#, r#""a":["0","0","0","0"]"#).replace(r#""d":"-1""#, r#""d":"1""#);
    let path2 = temp_file("fail.json", &failing);
    let out = qsh(&["verify", "--input", path2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], false);
    for p in [path, path2] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn classify_small_n() {
    let v = report(&["classify", "--n", "2"], 0);
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 8);
    assert!(v["unmatched"].as_array().unwrap().is_empty());
    let v = report(&["classify", "--n", "3", "--grid-height", "3", "--grid-range", "-3/2,3/2"], 0);
    assert!(v["outcomes"].as_array().unwrap().iter().all(|o| !o["tag"].as_str().unwrap().starts_with("m3")));
    assert_eq!(qsh(&["classify", "--n", "1"]).status.code(), Some(2));
    assert_eq!(qsh(&["classify", "--n", "2", "--grid-range", "2"]).status.code(), Some(2));
}

#[test]
fn torsion_reports() {
    let v = report(&["torsion", "--n", "2"], 0);
    assert_eq!(v["lambda"], serde_json::json!(["-1", "0", "0", "1", "0", "0", "0", "0"]));
    assert_eq!(v["closure_dim"], 9);
    let v = report(&["torsion", "--n", "3"], 0);
    assert_eq!(v["on_line"], true);
    assert_eq!(qsh(&["torsion", "--n", "1"]).status.code(), Some(2));
}

#[test]
fn catalog_and_killing() {
    let v = report(&["catalog-list", "--n", "3"], 0);
    assert_eq!(v.as_array().unwrap().len(), 16);
    let v = report(&["killing", "m3:2"], 0);
    assert_eq!(v["degenerate"], false);
    let v = report(&["killing", "ns-even:2,0,0"], 0);
    assert_eq!((v["rank"].as_u64(), v["degenerate"].as_bool()), (Some(0), Some(true)));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [&["classify", "--n", "2"][..], &["verify", "ns-odd:3,0,1"], &["torsion", "--n", "2"]] {
        assert_eq!(qsh(args).stdout, qsh(args).stdout, "{args:?}");
    }
}

#[test]
fn out_and_pretty() {
    let path = std::env::temp_dir().join(format!("qsh-cli-test-{}-out.json", std::process::id()));
    let out = qsh(&["torsion", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["solvable"], true);
    let _ = std::fs::remove_file(path);
    let text = String::from_utf8(qsh(&["torsion", "--n", "2", "--pretty"]).stdout).unwrap();
    assert!(text.contains("closure_dim: 9"));
    assert!(text.contains("lambda: [-1, 0, 0, 1, 0, 0, 0, 0]"));
}
