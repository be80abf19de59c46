use std::process::{Command, Output};

use serde_json::Value;

fn octo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octo-cr")).args(args).env_remove("OCTO_CR_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn table_entry_e4_e5_is_e1() {
    let out = octo(&["table", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 64);
    let e45 = entries.iter().find(|e| e["row"] == 4 && e["col"] == 5).unwrap();
    assert_eq!(e45["sign"], 1);
    assert_eq!(e45["index"], 1);
}

#[test]
fn table_csv_and_markdown_shapes() {
    let csv = String::from_utf8(octo(&["table", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 64);
    let md = String::from_utf8(octo(&["table", "--format", "markdown"]).stdout).unwrap();
    let first_row = md.lines().nth(2).unwrap();
    assert_eq!(first_row, "| **1** | 1 | e1 | e2 | e3 | e4 | e5 | e6 | e7 |");
}

#[test]
fn systems_emit_both_systems() {
    let v = json(&octo(&["systems"]));
    let real = v["real"]["equations"].as_array().unwrap();
    assert_eq!(real.len(), 8);
    assert_eq!(real[0], "+d0f0 -d1f1 -d2f2 -d3f3 -d4f4 -d5f5 -d6f6 -d7f7");
    let complex = v["complex"]["equations"].as_array().unwrap();
    assert_eq!(complex.len(), 4);
    let mut operators = std::collections::BTreeSet::new();
    for eq in complex {
        for term in eq.as_str().unwrap().split(' ') {
            operators.insert(term[1..].split('(').next().unwrap().to_string());
        }
    }
    assert_eq!(operators.len(), 8, "{operators:?}");
}

#[test]
fn systems_diff_lists_only_the_documented_erratum() {
    let out = octo(&["systems", "--diff-paper"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 1);
    assert_eq!(v["undocumented"], 0);
    let m = &v["mismatches"][0];
    assert_eq!(
        (m["system"].as_str(), m["equation"].as_u64(), m["term"].as_str()),
        (Some("real"), Some(2), Some("d7f5"))
    );
}

#[test]
fn verify_algebra_passes_and_is_reproducible() {
    let a = octo(&["verify", "algebra", "--seed", "42"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = octo(&["verify", "algebra", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["report_version"], 1);
    assert_eq!(v["seed"], 42);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("runtime_ms"));
}

#[test]
fn seed_falls_back_to_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_octo-cr"))
        .args(["verify", "forms", "--samples", "20"])
        .env("OCTO_CR_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 9);
    let flag = Command::new(env!("CARGO_BIN_EXE_octo-cr"))
        .args(["verify", "forms", "--samples", "20", "--seed", "3"])
        .env("OCTO_CR_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(json(&flag)["seed"], 3);
}

#[test]
fn verify_writes_to_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = octo(&["verify", "forms", "--samples", "20", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "forms");
}

#[test]
fn verify_csv_and_markdown() {
    let csv = String::from_utf8(octo(&["verify", "forms", "--samples", "20", "--format", "csv"]).stdout).unwrap();
    assert!(csv.starts_with("suite,name,max_residual,tolerance,expectation,passed"));
    let md = String::from_utf8(octo(&["verify", "forms", "--samples", "20", "--format", "markdown"]).stdout).unwrap();
    assert!(md.starts_with("# Suite `forms`"));
}

#[test]
fn exit_codes() {
    assert_eq!(octo(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(octo(&["table", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(octo(&["verify", "algebra", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(octo(&["verify", "algebra", "--seed", "-1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/out.json");
    let out = octo(&["table", "--out", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn small_integral_run_reports_every_fixture() {
    let out = octo(&["verify", "integral", "--samples", "20000", "--seed", "7"]);
    let v = json(&out);
    let names: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    for fixture in ["constant", "fueter1", "biaxial_z"] {
        assert!(names.iter().any(|n| n.starts_with(&format!("reproduction.{fixture}."))), "{fixture}");
    }
    let constant =
        v["records"].as_array().unwrap().iter().find(|r| r["name"] == "reproduction.constant.point0").unwrap();
    assert_eq!(constant["passed"], true);
}
