use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superhc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

#[test]
fn interp_emits_exact_coefficients() {
    let v = json(&["interp", "--p", "1", "--q", "1", "--mu", "2"]);
    let mut terms: Vec<(Vec<u64>, String)> = v["poly"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["exp"].as_array().unwrap().iter().map(|e| e.as_u64().unwrap()).collect(), t["coef"].as_str().unwrap().to_string()))
        .collect();
    terms.sort();
    let expected = vec![
        (vec![0, 2], "1/16".to_string()),
        (vec![2, 0], "-1/16".to_string()),
        (vec![2, 2], "-1/16".to_string()),
        (vec![4, 0], "1/16".to_string()),
    ];
    assert_eq!(terms, expected);
    assert_eq!(v["normalization"]["value"], "4");
}

#[test]
fn interp_reports_extra_vanishing() {
    let v = json(&["interp", "--p", "2", "--q", "1", "--mu", "2,1", "--slack", "2"]);
    assert_eq!(v["extra_vanishing_failures"], Value::Array(vec![]));
}

#[test]
fn interp_table_is_csv() {
    let o = run(&["interp", "--p", "1", "--q", "1", "--table", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "\"mu \\ lambda\",\"()\",\"(1)\",\"(1,1)\",\"(2)\"");
    assert_eq!(lines[4], "\"(2)\",0,0,0,4");
}

#[test]
fn basis_reports_dimension() {
    assert_eq!(json(&["basis", "--p", "1", "--q", "1", "--d", "3"])["dim"], 7);
    assert_eq!(json(&["basis", "--p", "2", "--q", "1", "--d", "2"])["dim"], 4);
}

#[test]
fn brackets_check_table_passes() {
    let o = run(&["brackets", "--check-table"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "64/64 pass");
}

#[test]
fn reflect_prints_trace_and_summary() {
    let o = run(&["reflect", "--p", "1", "--q", "1", "--lambda", "3,1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("step"));
    assert!(text.contains("dominant: true"));
}

#[test]
fn kac_quasi_spherical_case() {
    let v = json(&["kac", "--a", "2", "--b", "1", "--quasi"]);
    assert_eq!(v["spherical"], Value::Array(vec![]));
    assert_eq!(v["quasi_spherical"]["passed"], true);
    let v = json(&["kac", "--a", "2", "--b", "0"]);
    assert_eq!(v["spherical"].as_array().unwrap().len(), 1);
    assert_eq!(v["typical"], true);
}

#[test]
fn shimura_reports_constant() {
    let v = json(&["shimura", "--mu", "2", "--verify"]);
    assert_eq!(v["c_mu"], "1/2");
    assert_eq!(v["k_invariant"], true);
}

#[test]
fn unknown_flags_print_usage_and_fail() {
    let o = run(&["interp", "--bogus"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let a = run(&["interp", "--p", "1", "--q", "2", "--mu", "1,1", "--format", "json"]);
    let b = run(&["interp", "--p", "1", "--q", "2", "--mu", "1,1", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);

    let path = std::env::temp_dir().join(format!("superhc-cli-{}.json", std::process::id()));
    let o = run(&["interp", "--p", "1", "--q", "2", "--mu", "1,1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, a.stdout);
}

#[test]
fn verify_all_exit_status_reflects_the_report() {
    let o = run(&["verify-all", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
    assert_eq!(o.status.success(), v["passed"].as_bool().unwrap());
}
