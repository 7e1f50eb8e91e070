use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levelrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(&[args, &["--json"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tau_xu_example() {
    let out = run(&["tau", "2", "10", "0", "[4,6]"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("[0,0,0,1,0,0,0,1,0,0]"));
    let j = json(&["tau", "2", "10", "0", "(6)"]);
    assert_eq!(j["image"]["weight"], serde_json::json!([0, 0, 0, 1, 0, 0, 0, 1, 0, 0]));
}

#[test]
fn cc_prints_equal_charges() {
    let j = json(&["cc", "4", "5", "1"]);
    assert_eq!(j["ambient"], "19");
    assert_eq!(j["pair"], "19");
    assert_eq!(j["equal"], true);
}

#[test]
fn etale_is_branch_zero() {
    assert_eq!(json(&["etale", "3", "6"]), json(&["branch", "3", "6", "0"]));
    let out = run(&["branch", "3", "6", "0", "--young"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches('⊠').count(), 10);
}

#[test]
fn json_is_deterministic() {
    let a = run(&["fuse", "3", "3", "--json"]).stdout;
    let b = run(&["fuse", "3", "3", "--json"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn fuse_records() {
    let j = json(&["fuse", "2", "2", "[1,1]", "[1,1]"]);
    let records = j.as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r["multiplicity"] == 1));
}

#[test]
fn smatrix_json() {
    let out = run(&["smatrix", "2", "1", "--precision", "64"]);
    assert!(out.status.success());
    let j: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(j["central_charge"], "1");
    assert_eq!(j["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn qdim_backends_agree() {
    let exact = json(&["qdim", "2", "10", "[4,6]"]);
    let float = json(&["qdim", "2", "10", "[4,6]", "--backend", "float"]);
    let a: f64 = exact["dimension"]["value"].as_str().unwrap().parse().unwrap();
    let b: f64 = float["dimension"]["value"].as_str().unwrap().parse().unwrap();
    assert!((a - b).abs() < 1e-12);
    assert!((a - (2.0 + 3f64.sqrt())).abs() < 1e-12);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("levelrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["branch", "2", "2", "0", "--json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let stdout: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(file, stdout);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "tau", "--bound", "3"]).status.code(), Some(0));
    assert_eq!(run(&["branch", "1", "3", "0"]).status.code(), Some(2));
    assert_eq!(run(&["tau", "2", "10", "1", "[4,6]"]).status.code(), Some(2));
    assert_eq!(run(&["qdim", "2", "3", "[1,1]"]).status.code(), Some(2));
    assert_eq!(run(&["mirror", "2", "10", "[4,6]"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["smatrix", "2", "2", "--precision", "16"]).status.code(), Some(2));
}

#[test]
fn mirror_failure_exits_one() {
    // [1,1,1] has conformal weight 4/3, so the twist condition fails
    let out = run(&["mirror", "3", "3", "[3,0,0]", "[1,1,1]"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
}
