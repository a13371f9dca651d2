use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn yrk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yrk")).args(args).env_remove("YRK_BACKEND").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn build(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let p = dir.join(name);
    let mut args = vec!["rep", "build", "-o", p.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = yrk(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_writes_cartan_zero_modes() {
    let dir = tempfile::tempdir().unwrap();
    let p = build(dir.path(), "c2.json", &["--type", "sl2-eval", "--a", "0", "--hbar", "1"]);
    let v: Value = serde_json::from_slice(&std::fs::read(p).unwrap()).unwrap();
    assert_eq!(v["xi0"][0], serde_json::json!([["1", "0"], ["0", "-1"]]));
    assert_eq!(v["backend"], "exact");
}

#[test]
fn qybe_passes_and_negative_control_fails() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(dir.path(), "a.json", &["--a", "0"]);
    let b = build(dir.path(), "b.json", &["--a", "2/5"]);
    let c = build(dir.path(), "c.json", &["--a", "-9/10"]);
    let bad = build(dir.path(), "bad.json", &["--a", "0", "--scale-xm0", "2"]);
    let good = yrk(&["check", "qybe", "--reps", s(&a), s(&b), s(&c), "--s1", "3.1", "--s2", "2.7", "--tol", "1e-7"]);
    assert_eq!(code(&good), 0);
    let out = dir.path().join("bad_report.json");
    let o = yrk(&["check", "qybe", "--reps", s(&bad), s(&b), s(&c), "--s1", "3.1", "--s2", "2.7", "-o", s(&out)]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_slice(&std::fs::read(out).unwrap()).unwrap();
    assert!(r["checks"][0]["residual"].as_f64().unwrap() > 1e-2);
}

#[test]
fn relation_report_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(dir.path(), "a.json", &["--a", "-2+i"]);
    let o = yrk(&["rep", "verify", s(&a), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("id,residual,tol,pass\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn rminus_both_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(dir.path(), "a.json", &["--a", "0"]);
    let b = build(dir.path(), "b.json", &["--a", "13/10"]);
    let o = yrk(&["rminus", "--v1", s(&a), "--v2", s(&b), "--method", "both"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["matrix"][2][1]["den"].is_array());
    assert_eq!(v["report"]["checks"][0]["pass"], true);
}

#[test]
fn tensor_then_rzero_and_rfull() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(dir.path(), "a.json", &["--a", "7/10"]);
    let b = build(dir.path(), "b.json", &["--a", "-21/10"]);
    let t = dir.path().join("t.json");
    assert_eq!(code(&yrk(&["tensor", "--mode", "drinfeld", "--s", "0", s(&a), s(&b), "-o", s(&t)])), 0);
    assert_eq!(code(&yrk(&["rep", "verify", s(&t)])), 0);
    let o = yrk(&["rzero", "--v1", s(&a), "--v2", s(&t), "--s", "2.5+0.5j", "--direction", "down"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = yrk(&["rzero", "formal", "--v1", s(&a), "--v2", s(&a), "--order", "3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
    let o = yrk(&["rfull", "--v1", s(&a), "--v2", s(&b), "--s", "3.3"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, r#"{"cartan": 3}"#).unwrap();
    assert_eq!(code(&yrk(&["rep", "verify", s(&junk)])), 2);
    let a = build(dir.path(), "a.json", &["--a", "0"]);
    let f = build(dir.path(), "f.json", &["--a", "0", "--backend", "float"]);
    assert_eq!(code(&yrk(&["rfull", "--v1", s(&a), "--v2", s(&f), "--s", "3"])), 2);
    assert_eq!(code(&yrk(&["rfull", "--v1", s(&a), "--v2", s(&a), "--s", "0"])), 3);
}

#[test]
fn suite_is_deterministic() {
    let run = || {
        let o = yrk(&["suite", "full", "--seed", "11"]);
        assert_eq!(code(&o), 0);
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["wall_time_s"] = Value::from(0.0);
        v
    };
    assert_eq!(run(), run());
}
