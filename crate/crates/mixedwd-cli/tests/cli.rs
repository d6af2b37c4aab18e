use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mixedwd")).args(args).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn run_file(verb: &str, file: &str, extra: &[&str]) -> (i32, Value, String) {
    let p = data(file);
    let mut args = vec![verb, p.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn check_std() {
    let (code, v, _) = run_file("check", "std1.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"]["axioms"]["commutation"], true);
    assert_eq!(v["payload"]["weights"], serde_json::json!({"-2": 1, "0": 1}));
}

#[test]
fn check_reports_axiom_violations() {
    let (code, v, _) = run_file("check", "bad_axioms.json", &[]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "error");
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn schema_errors_exit_two_with_pointers() {
    let (code, v, _) = run_file("check", "bad_schema.json", &[]);
    assert_eq!(code, 2);
    let d: Vec<&str> = v["diagnostics"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert!(d.iter().any(|m| m.starts_with("/q:")), "{d:?}");
    assert!(d.iter().any(|m| m.starts_with("/N/0/0:")), "{d:?}");
    let (code, _, _) = run(&["check", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["no-such-verb"]);
    assert_eq!(code, 2);
}

#[test]
fn decompose_two_dim_example() {
    let (code, v, _) = run_file("decompose", "two_dim.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["components"], serde_json::json!({"(-2,0)": 1, "(0,0)": 1}));
    // blocks in increasing (i, j): columns v2 then v0
    assert_eq!(v["payload"]["embedding"], serde_json::json!([["0", "1"], ["1", "0"]]));
}

#[test]
fn split_and_analyze() {
    let (code, v, _) = run_file("split", "two_dim.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["matrix"], serde_json::json!([["0", "1"], ["1", "0"]]));
    assert_eq!(v["payload"]["n_equivariant"], false);
    let (code, v, _) = run_file("analyze", "not_mixed.json", &[]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["mixed"], false);
}

#[test]
fn selmer_and_normalize() {
    let (code, v, _) = run_file("selmer", "heisenberg.json", &[]);
    assert_eq!(code, 0);
    assert_eq!((v["payload"]["dim_e"].as_u64(), v["payload"]["dim_g"].as_u64()), (Some(3), Some(4)));
    let c = data("line_cocycle.json");
    let (code, v, _) = run_file("normalize", "line.json", &["--cocycle", c.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["w"], serde_json::json!(["2"]));
    let (code, v, _) = run_file("normalize", "line.json", &["--cocycle", c.to_str().unwrap(), "--mode", "f"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["w"], serde_json::json!(["2"]));
}

#[test]
fn pi1_build_tate() {
    let (code, v, _) = run_file("pi1-build", "tate.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["mixed"], true);
    assert_eq!(v["payload"]["primitive_dims"], serde_json::json!([2, 1, 2]));
    assert_eq!(v["payload"]["lyndon_counts"], serde_json::json!(["2", "1", "2"]));
}

#[test]
fn curve_dim_flags_and_file() {
    let (code, v, err) = run(&["curve-dim", "--g", "1", "--g0", "1", "--n", "2", "--deg", "1", "--pretty"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["dim_g"], 3);
    assert!(err.contains("dim H_g = 3"));
    let p = data("curve.json");
    let (code, v, _) = run(&["curve-dim", "--input", p.to_str().unwrap(), "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!((v["payload"]["dim_g"].as_u64(), v["payload"]["oracle_dim_g"].as_u64()), (Some(3), Some(3)));
    let (code, _, _) = run(&["curve-dim", "--g", "1", "--nu", "s=1"]);
    assert_eq!(code, 1);
}

#[test]
fn cg_ml2_lyndon_float() {
    let (code, v, _) = run(&["cg", "--j1", "1", "--j2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["summands"][1]["generator"], serde_json::json!(["0", "-1", "1", "0"]));
    let p = data("two_dim.json");
    let (code, v, _) = run(&["ml2", p.to_str().unwrap(), "--a", "1", "--b", "0", "--c", "0", "--d", "1", "--sqrt-det", "-1"]);
    assert_eq!(code, 0, "{v}");
    let (code, v, _) = run(&["lyndon", "--m", "2", "--n", "4", "--float"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["total"], "8");
    assert_eq!(v["payload_float"]["total"], 8.0);
}

#[test]
fn output_is_deterministic() {
    let a = Command::new(env!("CARGO_BIN_EXE_mixedwd")).args(["decompose", data("two_dim.json").to_str().unwrap()]).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_mixedwd")).args(["decompose", data("two_dim.json").to_str().unwrap()]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
