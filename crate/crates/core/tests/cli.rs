//! Runs the `modspec` binary and checks output, exit codes and archive handling.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn modspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modspec")).args(args).env_remove("MODSPEC_ARCHIVE").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn group_info_reports_signature() {
    let out = modspec(&["group", "info", "gamma0_9"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["mu"].as_u64(), v["kappa"].as_u64()), (Some(12), Some(4)));
    assert_eq!((v["v2"].as_u64(), v["v3"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn gn_cancel_within_tolerance() {
    let out = modspec(&["trace", "gn-cancel", "--T", "2.0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["residuals"];
    for k in ["I_gn", "E_gn", "P_gn"] {
        assert!(r[k].as_f64().unwrap().abs() < 1e-8, "{k}");
    }
}

#[test]
fn failed_check_exits_one() {
    let out = modspec(&["trace", "gn-cancel", "--T", "2.0", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    let out = modspec(&["group", "info", "gamma0_9", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(modspec(&["--workers", "0", "group", "info", "gamma3"]).status.code(), Some(2));
    assert_eq!(modspec(&["--tol", "-1", "group", "info", "gamma3"]).status.code(), Some(2));
    assert_eq!(modspec(&["group", "info", "gamma0_x"]).status.code(), Some(2));
    assert_eq!(modspec(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [&["--seed", "5", "hecke", "tp-identities", "--p", "7"][..], &["rep", "checks"], &["group", "cosets", "gamma3"]] {
        let a = modspec(args);
        let b = modspec(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn csv_is_a_projection() {
    let args = ["hecke", "tp-identities", "--p", "5"];
    let n = json(&modspec(&args))["checks"].as_array().unwrap().len();
    let out = modspec(&[&["--format", "csv"][..], &args].concat());
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["holds", "name"]);
    assert_eq!(rdr.records().count(), n);
}

#[test]
fn rep_decompose_gamma3() {
    let out = modspec(&["rep", "decompose", "--subgroup", "gamma3", "--sign", "off"]);
    assert_eq!(json(&out)["summary"], "chi0 + W");
}

#[test]
fn pair_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    std::fs::write(&path, "[[1, 1.0, 0.0], [-2, 0.5, 0.0], [4, -0.25, 0.0]]").unwrap();
    let out = modspec(&["hecke", "pair", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let get = |key: &str, n: i64| {
        v[key].as_array().unwrap().iter().find(|r| r[0].as_i64() == Some(n)).map(|r| r[1].as_f64().unwrap()).unwrap()
    };
    assert_eq!((get("cplus", 2), get("cminus", 2)), (0.5, -0.5));
    assert_eq!((get("cplus", -4), get("cminus", -4)), (-0.25, 0.25));

    std::fs::write(&path, "[[2, 1.0, 0.0]]").unwrap();
    assert_eq!(modspec(&["hecke", "pair", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}

fn contents(p: &Path) -> Option<Vec<u8>> {
    std::fs::read(p).ok()
}

#[test]
fn invalid_scan_leaves_archive_untouched() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = dir.path().join("fresh.jsonl");
    let out = modspec(&["spectrum", "scan", "--level", "1", "--from", "9.6", "--to", "9.4", "--out", fresh.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(contents(&fresh), None);
    let out = modspec(&["spectrum", "scan", "--level", "4", "--from", "9.4", "--to", "9.6", "--out", fresh.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(contents(&fresh), None);

    let foreign = dir.path().join("foreign.jsonl");
    std::fs::write(&foreign, "{\"not\": \"an archive\"}\n").unwrap();
    let before = contents(&foreign);
    let out = modspec(&["spectrum", "scan", "--level", "1", "--from", "9.45", "--to", "9.6", "--out", foreign.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(contents(&foreign), before);
}

#[test]
fn scan_then_classify() {
    let dir = tempfile::tempdir().unwrap();
    let archive = dir.path().join("a.jsonl");
    let a = archive.to_str().unwrap();
    let out = modspec(&["spectrum", "scan", "--level", "1", "--from", "9.45", "--to", "9.6", "--parity", "odd", "--out", a]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let found = json(&out)["found"].as_array().unwrap().clone();
    assert_eq!(found.len(), 1);
    assert!((found[0]["R"].as_f64().unwrap() - 9.533695).abs() < 1e-6);

    let v = json(&modspec(&["spectrum", "classify", "--archive", a]));
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["label"][0], "level-one");
}
