use std::path::Path;
use std::process::{Command, Output};

fn solenoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solenoid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn jacobi_passes_for_rank_two() {
    let out = solenoid(&["--suite", "jacobi", "--n", "2", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["suite"], "jacobi");
    assert_eq!(r["status"], "pass");
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(r["elapsed_ms"].is_null());
}

#[test]
fn omega_reports_identities() {
    let out = solenoid(&["--suite", "omega", "--r", "2", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let ids = report(&out)["identities"].as_array().unwrap().clone();
    assert!(!ids.is_empty());
    assert!(ids.iter().all(|i| i["status"] == "pass"));
}

#[test]
fn cover_rank_table() {
    let out = solenoid(&["--suite", "cover-rank", "--n", "1", "--weight", "-2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["rank_table"]["generic"], 2);
    assert_eq!(r["rank_table"]["alpha=0"], 1);
    assert_eq!(r["config"]["weights"][0], "-2");
}

#[test]
fn identical_configs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = solenoid(&["--suite", "all", "--n", "2", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["--suite", "nope"][..],
        &["--n", "0"],
        &["--window", "1"],
        &["--beta", "1/2"],
        &["--alpha", "x"],
        &["--r", "1"],
        &["--n", "2", "--weight", "1"],
        &["--jet-rep", "/nonexistent/rep.txt"],
    ] {
        assert_eq!(solenoid(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn specialized_parameters_pass() {
    for args in [&["--alpha", "0", "--beta", "0"][..], &["--alpha", "1", "--beta", "0"], &["--alpha", "-3/2"]] {
        let mut full = vec!["--n", "1"];
        full.extend_from_slice(args);
        let out = solenoid(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn jet_rep_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.txt", "n 1\ndim 2\ndegree_bound 1\nrho 1\na*m1, m1\n0, a*m1\n");
    let out = solenoid(&["--suite", "aw-calculus", "--jet-rep", &good]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["name"] == "aw-calculus/file/deform"));

    // Non-commuting degree-0 generators violate the bracket relations.
    let bad = write(dir.path(), "bad.txt", "n 2\ndim 2\ndegree_bound 1\nrho 1,0\n0, 1\n0, 0\nrho 0,1\n0, 0\n1, 0\n");
    let out = solenoid(&["--n", "2", "--suite", "aw-calculus", "--jet-rep", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid jet representation"));
}

#[test]
fn timing_is_opt_in() {
    let out = solenoid(&["--suite", "jet-commutant", "--timing"]);
    assert!(report(&out)["elapsed_ms"].is_u64());
}
