use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfdual")).args(args).output().expect("spawn selfdual")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_selfdual"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn selfdual");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn count_examples() {
    let v = json(&run(&["count", "--q", "4", "--n", "6", "--r", "1"]));
    assert_eq!(v["selfdual_cyclic_count"], 3);
    assert_eq!(v["Lambda_bar"], 2);
    assert_eq!(v["theta_cyclic_count"], 1);
    assert!(v["meta"]["elapsed_ms"].is_number());

    let v = json(&run(&["count", "--q", "4", "--n", "14", "--r", "1"]));
    assert_eq!((v["selfdual_cyclic_count"].as_u64(), v["Lambda_bar"].as_u64(), v["theta_cyclic_count"].as_u64()), (Some(3), Some(0), Some(3)));
}

#[test]
fn count_odd_length_warns() {
    let v = json(&run(&["count", "--q", "4", "--n", "5", "--r", "1"]));
    assert_eq!(v["theta_cyclic_count"], 0);
    assert!(v["warnings"][0].as_str().unwrap().contains("exist only"));
}

#[test]
fn count_via_p_and_m() {
    let a = run(&["--no-meta", "count", "--q", "8", "--n", "6", "--r", "1"]);
    let b = run(&["--no-meta", "count", "--p", "2", "--m", "3", "--n", "6", "--r", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_parameters_are_usage_errors() {
    for args in [
        &["count", "--q", "6", "--n", "4", "--r", "1"][..],
        &["count", "--q", "4", "--n", "4", "--r", "3"],
        &["count", "--n", "4", "--r", "1"],
        &["count", "--q", "4", "--n", "0", "--r", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn verify_trivial_twist_agrees() {
    let v = json(&run(&["verify", "--q", "2", "--n", "4", "--r", "1"]));
    assert_eq!(v["agree"], true);
    assert_eq!(v["formula"], v["oracle"]);
}

#[test]
fn verify_reports_the_oracle_count() {
    let v = json(&run(&["verify", "--q", "4", "--n", "6", "--r", "1"]));
    assert_eq!(v["formula"], 1);
    assert_eq!(v["oracle"], 3);
    assert_eq!(v["agree"], false);
}

#[test]
fn strict_disagreement_exits_4() {
    let out = run(&["--strict", "verify", "--q", "4", "--n", "6", "--r", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(!out.stdout.is_empty(), "the report is still printed");
    let out = run(&["--strict", "verify", "--q", "2", "--n", "4", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn guard_refusal_exits_3() {
    let out = run(&["--guard", "10", "verify", "--q", "4", "--n", "6", "--r", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = stderr(&out);
    assert!(msg.contains("--guard 64"), "{msg}");
}

#[test]
fn table_rows_and_consistency() {
    let out = run(&["--format", "csv", "--no-meta", "table", "--q", "4", "--n", "2..=16:2", "--r", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 8);

    let v = json(&run(&["--no-meta", "table", "--q", "4", "--n", "6", "--r", "1"]));
    let c = json(&run(&["--no-meta", "count", "--q", "4", "--n", "6", "--r", "1"]));
    let row = &v["rows"][0];
    for key in ["q", "n", "r", "selfdual_cyclic_count", "Lambda_bar", "theta_cyclic_count"] {
        assert_eq!(row[key], c[key], "{key}");
    }
}

#[test]
fn table_empty_grid_is_header_only() {
    let out = run(&["--format", "csv", "table", "--q", "", "--n", "2..=4:2"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn table_unbounded_range_is_usage_error() {
    let out = run(&["table", "--q", "4", "--n", "2.."]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unbounded"));
}

#[test]
fn qc_p5_report() {
    let v = json(&run(&["--no-meta", "qc", "--case", "P5", "--q", "4", "--m", "3", "--r", "1"]));
    assert_eq!(v["formula_count"], 3);
    assert_eq!(v["oracle_count"], 3);
    assert_eq!(v["direct_count"]["theta_invariant"], 3);
    assert_eq!(v["agree"], true);
    assert!(v["hypotheses"].as_array().unwrap().iter().all(|h| h["holds"].is_boolean()));
}

#[test]
fn qc_hypothesis_refusal_names_the_condition() {
    let out = run(&["qc", "--case", "P6", "--q", "7", "--d", "2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("q ≡ 3 mod 4 and d ≡ 0 mod 4"), "{}", stderr(&out));

    // q = 5 is 2 mod 3 and 11 mod 12 fails, so P7 at d = 2 dispatches.
    let v = json(&run(&["--no-meta", "qc", "--case", "P7", "--q", "5", "--d", "2", "--r", "1"]));
    assert_eq!(v["case"], "P7");
    let out = run(&["qc", "--case", "P7", "--q", "7", "--d", "2", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qc_size_flags() {
    assert_eq!(run(&["qc", "--case", "P5", "--q", "4", "--d", "2", "--r", "1"]).status.code(), Some(2));
    assert_eq!(run(&["qc", "--case", "P6", "--q", "5", "--m", "2", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn no_meta_is_byte_stable() {
    for args in [
        &["--no-meta", "count", "--q", "4", "--n", "14", "--r", "1"][..],
        &["--no-meta", "--jobs", "3", "oracle", "--q", "4", "--n", "6", "--r", "1"],
        &["--no-meta", "qc", "--case", "P5", "--q", "4", "--m", "3", "--r", "1"],
        &["--no-meta", "enumerate", "--q", "4", "--n", "6", "--r", "1"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));
    }
}

#[test]
fn jobs_do_not_change_the_oracle() {
    let a = run(&["--no-meta", "oracle", "--q", "4", "--n", "6", "--r", "1"]);
    let b = run(&["--no-meta", "--jobs", "4", "oracle", "--q", "4", "--n", "6", "--r", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn enumerate_selection_set() {
    let v = json(&run(&["enumerate", "--q", "4", "--n", "6", "--r", "1"]));
    let sels = v["selections"].as_array().unwrap();
    assert_eq!(sels.len(), 3);
    let fixed = sels.iter().filter(|s| s["fixed_by_lambda"] == true).count();
    assert_eq!(fixed, 1);
}

#[test]
fn inspect_round_trip() {
    let v = json(&run(&["oracle", "--q", "4", "--n", "6", "--r", "1"]));
    assert_eq!(v["count"], 3);
    for code in v["codes"].as_array().unwrap() {
        let rep = json(&run_stdin(&["--no-meta", "inspect", "-"], &code.to_string()));
        assert_eq!(rep["self_dual"], true);
        assert_eq!(rep["k"], 3);
        assert_eq!(rep["twists"][0]["theta_cyclic"], true);
        assert!(rep["quasi_cyclic_indices"].as_array().unwrap().contains(&Value::from(2)));
        let total: u64 = rep["weight_enumerator"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
        assert_eq!(total, 64);
    }
}

#[test]
fn inspect_rejects_bad_input() {
    let out = run_stdin(&["inspect", "-"], "{\"nope\": 1}");
    assert_eq!(out.status.code(), Some(2));
    let bad_k = r#"{"field":{"p":2,"m":2,"q":4,"modulus":[1,1,1]},"n":2,"k":2,"generator_matrix":[[[1,0],[1,0]]]}"#;
    assert_eq!(run_stdin(&["inspect", "-"], bad_k).status.code(), Some(2));
}

#[test]
fn output_formats() {
    let csv = run(&["--format", "csv", "count", "--q", "4", "--n", "6", "--r", "1"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("q,n,r,"));
    assert_eq!(text.lines().count(), 2);
    let txt = run(&["--format", "text", "count", "--q", "4", "--n", "6", "--r", "1"]);
    assert!(String::from_utf8(txt.stdout).unwrap().lines().any(|l| l.starts_with("theta_cyclic_count") && l.ends_with(" 1")));
}
