use std::fs;
use std::process::{Command, Output};

fn ktrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ktrans")).args(args).env_remove("KTRANS_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn worked_expansion_as_json() {
    let o = ktrans(&["expand", "--type", "B", "--w", "-3,4,-1,5,2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["type", "w", "length", "basis", "terms"]);
    assert_eq!(v["length"], 7);
    let terms = v["terms"].as_array().unwrap();
    let coeffs: Vec<_> = terms.iter().map(|t| (t["coeff"].as_u64().unwrap(), t["beta_power"].as_i64().unwrap())).collect();
    assert_eq!(coeffs, [(4, 0), (2, 0), (2, 0), (5, 1), (5, 1), (3, 1), (6, 2)]);
    assert_eq!(terms[6]["lambda"], serde_json::json!([5, 3, 1]));
}

#[test]
fn small_examples() {
    assert_eq!(stdout(&ktrans(&["length", "--type", "B", "--w", "-2,1"])), "2");
    assert_eq!(stdout(&ktrans(&["gq", "--shape", "[1]", "--N", "1", "--D", "2"])), "2*z1 + b*z1^2");
    let skew = ktrans(&["skew", "--outer", "[5,3,1]", "--inner", "[2]"]);
    let via_d = ktrans(&["skew", "--outer", "[5,3,1]", "--inner", "[2]", "--via-d"]);
    assert_eq!(stdout(&skew), stdout(&via_d));
    assert!(stdout(&skew).starts_with("4*GP[4,2,1]"));
    let a = ktrans(&["gp", "--shape", "outer=[2] inner=[1]", "--N", "2", "--D", "3"]);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn text_output_is_stable() {
    let args = ["expand", "--type", "C", "--w", "-3,4,-1,5,2"];
    assert_eq!(stdout(&ktrans(&args)), stdout(&ktrans(&args)));
}

#[test]
fn transitions_report_zero_residual() {
    let o = ktrans(&["kn-transition", "--type", "C", "--w", "1,-2", "--N", "2", "--D", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["a"].as_u64(), v["b"].as_u64(), v["c"].as_i64()), (Some(1), Some(2), Some(-2)));
    assert_eq!(v["residual"], "0");
    assert_eq!(ktrans(&["kn-transition", "--type", "A", "--w", "1,3,2"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ktrans(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ktrans(&["length", "--type", "B", "--w", "1,1"]).status.code(), Some(2));
    assert_eq!(ktrans(&["expand", "--type", "A", "--w", "2,1"]).status.code(), Some(2));
    assert_eq!(ktrans(&["skew", "--outer", "[2]", "--inner", "[3]"]).status.code(), Some(2));
    assert_eq!(ktrans(&["gp", "--shape", "[1]", "--N", "0"]).status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let o = ktrans(&["verify-suite", "--seed", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
}

#[test]
fn cache_file_is_versioned_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ktrans"))
            .args(["expand", "--type", "B", "--w", "-3,4,-1,5,2", "--verify", "--N", "2", "--D", "8"])
            .env("KTRANS_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let bytes = fs::read(dir.path().join("ktrans-cache.bin")).unwrap();
    assert_eq!(&bytes[..4], &1u32.to_le_bytes());
    assert!(bytes.len() > 8);
    let second = run();
    assert_eq!(stdout(&first), stdout(&second));

    fs::write(dir.path().join("ktrans-cache.bin"), [9, 0, 0, 0]).unwrap();
    let third = run();
    assert_eq!(third.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&third.stderr).contains("ignoring cache"));
}
