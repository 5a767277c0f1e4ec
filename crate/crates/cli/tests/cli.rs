use std::path::PathBuf;
use std::process::{Command, Output};

use kzdyn_cli::{Report, Verdict, SCHEMA_VERSION, SUITES};

fn kzdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzdyn")).args(args).env_remove("KZDYN_CACHE").output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kzdyn-cli-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn dump_order_lists_roots_largest_first() {
    let out = kzdyn(&["dump", "order", "--n", "3", "--h", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "a(1,2),a(1,3),a(2,3)");
}

#[test]
fn every_dump_kind_emits_json() {
    for kind in ["sigma", "operator", "fusion", "phi-vector", "forest"] {
        let n = if kind == "sigma" { "4" } else { "2" };
        let mut args = vec!["dump", kind, "--n", n];
        if kind == "sigma" {
            args.extend(["--h", "2"]);
        }
        let out = kzdyn(&args);
        assert!(out.status.success(), "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["n"].as_u64(), Some(n.parse().unwrap()), "{kind}");
    }
}

#[test]
fn list_shows_every_suite() {
    let out = kzdyn(&["list"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), SUITES.to_vec());
}

#[test]
fn report_has_the_documented_fields() {
    let out = kzdyn(&["verify", "sigma-orders"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["schema_version", "version", "suite", "params", "verdict", "witnesses", "warnings", "elapsed_seconds"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["schema_version"], SCHEMA_VERSION);
    assert_eq!(v["verdict"], "pass");
    let w = &v["witnesses"][0];
    assert!(w["name"].is_string() && w["verdict"].is_string() && w.get("detail").is_some());
}

#[test]
fn failing_verdict_exits_one() {
    let out = kzdyn(&["verify", "main-theorem-sl2", "--tol", "1e-30", "--summary"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("fail"));
}

#[test]
fn flagged_verdict_exits_zero_with_warning() {
    let out = kzdyn(&["verify", "pbw-invariance", "--n", "3", "--nu", "3,3", "--summary"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("flagged"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(kzdyn(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(kzdyn(&["dump", "no-such-kind"]).status.code(), Some(2));
    assert_eq!(kzdyn(&["verify", "additive-form", "--n", "3", "--nu", "1"]).status.code(), Some(2));
    assert_eq!(kzdyn(&["verify", "compatibility", "--n", "3", "--factors", "lp:2"]).status.code(), Some(2));
}

#[test]
fn out_writes_the_report() {
    let dir = scratch("out");
    let path = dir.join("r.json");
    let out = kzdyn(&["verify", "appendix-c", "--out", path.to_str().unwrap(), "--summary"]);
    assert!(out.status.success());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.suite, "appendix-c");
    assert_eq!(r.verdict, Verdict::Pass);
}

#[test]
fn cache_directory_memoizes_reports() {
    let dir = scratch("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_kzdyn"))
            .args(["verify", "sigma-orders"])
            .env("KZDYN_CACHE", &dir)
            .output()
            .unwrap()
    };
    assert!(run().status.success());
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    // a second run must come from the memo, so a marker planted in it survives
    let mut r: Report = serde_json::from_str(&std::fs::read_to_string(&entries[0]).unwrap()).unwrap();
    r.elapsed_seconds = -1.0;
    std::fs::write(&entries[0], serde_json::to_string(&r).unwrap()).unwrap();
    let again: Report = serde_json::from_slice(&run().stdout).unwrap();
    assert_eq!(again.elapsed_seconds, -1.0);
}
