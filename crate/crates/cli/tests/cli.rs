use std::path::PathBuf;
use std::process::{Command, Output};

use a6arc_cli::RunReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a6arc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> RunReport {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("a6arc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn spectrum(rep: &RunReport) -> Vec<(String, u64)> {
    rep.results["spectrum"].as_object().unwrap().iter().map(|(k, v)| (k.clone(), v.as_u64().unwrap())).collect()
}

#[test]
fn orbit_over_prime_field() {
    let rep = json(&["orbit", "-p", "61"]);
    assert_eq!(rep.command, "orbit");
    assert_eq!(rep.params.modulus.as_deref(), Some("GF(61)"));
    let pts = rep.results["points"].as_array().unwrap();
    assert_eq!(pts.len(), 90);
    assert_eq!(pts[0]["coords"], serde_json::json!(["1", "34", "34"]));
    assert_eq!(pts[0]["word"], "I");
}

#[test]
fn orbit_rejects_bad_congruence() {
    let out = run(&["orbit", "-p", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("7 mod 30 = 7"));
    assert!(out.stdout.is_empty());
}

#[test]
fn orbit_over_extension() {
    let rep = json(&["orbit", "-p", "7", "-r", "2"]);
    assert_eq!(rep.params.plane_q, Some(49));
    assert_eq!(rep.results["points"].as_array().unwrap().len(), 90);
    let csv = stdout(&run(&["orbit", "-p", "7", "-r", "2", "--format", "csv"]));
    assert_eq!(csv.lines().count(), 91);
    assert!(csv.lines().nth(1).unwrap().contains("*w"));
}

#[test]
fn unsupported_degree_is_a_plain_failure() {
    assert_eq!(run(&["check", "-p", "7", "-r", "3"]).status.code(), Some(1));
}

#[test]
fn check_verdicts() {
    let text = stdout(&run(&["check", "-p", "349"]));
    assert!(text.contains("90-arc, complete"), "{text}");
    assert!(text.starts_with("# q = 349, plane PG(2,349) over GF(349)"));

    let rep = json(&["check", "-p", "61"]);
    assert!(rep.results["verdict"].as_str().unwrap().contains("type (0,1,2,4,6)"));
    let want: Vec<(String, u64)> = [("0", 1068), ("1", 450), ("2", 2025), ("4", 180), ("6", 60)]
        .iter()
        .map(|&(k, v)| (k.to_string(), v))
        .collect();
    assert_eq!(spectrum(&rep), want);

    let rep = json(&["check", "-p", "19"]);
    assert_eq!(rep.params.plane_q, Some(361));
    assert_eq!(rep.results["spectrum"]["5"], 72);
}

#[test]
fn check_with_oracle_agrees() {
    let out = run(&["--oracle", "check", "-p", "13", "-r", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let a = run(&["check", "-p", "61", "--format", "json"]);
    let b = run(&["check", "-p", "61", "--format", "json", "--jobs", "2"]);
    let ra: RunReport = serde_json::from_slice(&a.stdout).unwrap();
    let rb: RunReport = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(serde_json::to_string(&ra.results).unwrap(), serde_json::to_string(&rb.results).unwrap());
    let again: RunReport = serde_json::from_str(&ra.to_json()).unwrap();
    assert_eq!(again, ra);
    assert_eq!(ra.to_json(), String::from_utf8(a.stdout).unwrap());
}

#[test]
fn scan_small_ranges() {
    let rep = json(&["scan", "--p-max", "20"]);
    let ps: Vec<u64> = rep.results["rows"].as_array().unwrap().iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, [7, 11, 13, 17, 19]);
    assert_eq!(rep.results["non_arcs"], serde_json::json!([7, 11, 13, 17, 19]));

    let rep = json(&["scan", "--p-max", "6"]);
    assert!(rep.results["rows"].as_array().unwrap().is_empty());
}

#[test]
fn scan_to_450() {
    let rep = json(&["scan", "--p-max", "450"]);
    let rows = rep.results["rows"].as_array().unwrap();
    let non_arc_r1: Vec<u64> = rows
        .iter()
        .filter(|r| r["r"] == 1 && r["is_arc"] == false)
        .map(|r| r["p"].as_u64().unwrap())
        .collect();
    assert_eq!(non_arc_r1, [19, 61, 109, 181, 229, 241, 421]);
    // p = 19 with r = 1 lives in PG(2,361); the rest of the r = 1 exceptions
    // are planes over prime fields
    assert!(rows.iter().any(|r| r["p"] == 19 && r["plane_q"] == 361));
}

#[test]
fn delta_cache_cold_warm_and_corrupt() {
    let path = scratch("pairs.cache");
    let _ = std::fs::remove_file(&path);
    let p = path.to_str().unwrap();
    let cold = json(&["delta", "--cache", p]);
    assert_eq!(cold.timing.cache.as_deref(), Some("cold"));
    let confirmed: Vec<&str> = cold.results["confirmed"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(confirmed, ["7", "11", "13", "17", "19", "61", "109", "181", "229", "241", "421"]);
    assert_eq!(cold.results["pairs"], 3916);

    let warm = json(&["delta", "--cache", p]);
    assert_eq!(warm.timing.cache.as_deref(), Some("warm"));
    assert_eq!(warm.results, cold.results);

    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[40] = "12 13 zero -";
    std::fs::write(&path, lines.join("\n")).unwrap();
    let out = run(&["delta", "--cache", p]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 41"));
}

#[test]
fn export_mds_codes() {
    let path = scratch("mds349.csv");
    let rep = json(&["export-mds", "-p", "349", "--out", path.to_str().unwrap()]);
    assert_eq!((rep.results["n"].clone(), rep.results["k"].clone(), rep.results["d"].clone()), (90.into(), 3.into(), 88.into()));
    let csv = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.len() == 90));

    let rep = json(&["export-mds", "-p", "409", "--out", scratch("mds409.csv").to_str().unwrap()]);
    assert_eq!(rep.results["d"], Value::from(88));

    let out = run(&["export-mds", "-p", "61", "--out", scratch("mds61.csv").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not an arc"));
}
