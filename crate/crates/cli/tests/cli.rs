use std::process::{Command, Output};

fn qzm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzm")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_text() {
    let o = qzm(&["enumerate", "--n", "3", "--k", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("qzm "));
    assert_eq!(s.lines().filter(|l| l.contains(" diagram ")).count(), 7);
}

#[test]
fn json_output() {
    let o = qzm(&["verify-field", "--k", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "qzm-report/1");
    assert_eq!(v["config"]["h"], 5);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn failed_claim_sets_exit_code() {
    let o = qzm(&["fprime", "--n", "3", "--k", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("growth,") && l.contains(",fail,")));
}

#[test]
fn usage_errors() {
    assert_eq!(qzm(&["fprime", "--n", "1"]).status.code(), Some(2));
    assert!(!qzm(&["nonsense"]).status.success());
    assert!(!qzm(&["enumerate", "--format", "yaml"]).status.success());
}

#[test]
fn out_file_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("r.json");
    let c = cache.to_str().unwrap();
    let o = qzm(&["fprime", "--k", "2", "--cache-dir", c, "--format", "json", "--out", out.to_str().unwrap()]);
    // row-overflow growth lands back in F', which fails the strict claim
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["command"], "fprime");

    let list = qzm(&["cache", "list", "--cache-dir", c, "--format", "csv"]);
    assert!(list.status.success());
    let rows = stdout(&list).lines().filter(|l| l.starts_with("cache-record,")).count();
    assert!(rows > 0);
    let val = qzm(&["cache", "validate", "--cache-dir", c]);
    assert!(val.status.success(), "{}", stdout(&val));
    assert!(qzm(&["cache", "purge", "--cache-dir", c]).status.success());
    let after = qzm(&["cache", "list", "--cache-dir", c, "--format", "csv"]);
    assert_eq!(stdout(&after).lines().filter(|l| l.starts_with("cache-record,")).count(), 0);
}
