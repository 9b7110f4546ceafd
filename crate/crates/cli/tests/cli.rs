//! End-to-end tests of the binary: command surface, JSON schema, exit codes,
//! cache behaviour, and output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn zerosum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerosum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l}: {e}")))
        .collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn invariant_do_of_sym3() {
    let out = zerosum(&["invariant", "dsd(3)", "--which", "do"]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    let line = &lines[0];
    assert_eq!(line["spec"], "dsd(3)");
    assert_eq!(line["order"], 6);
    assert_eq!(line["invariant"], "do");
    assert_eq!(line["value"], 4);
    assert_eq!(line["certificate"]["witness"]["len"], 3);
    assert_eq!(line["budget_exhausted"], false);
    for key in ["method", "nodes", "elapsed_ms"] {
        assert!(line.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_t14_exit_zero() {
    let out = zerosum(&["verify", "T1.4", "G2(2,2,1)"]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    let do_line = lines
        .iter()
        .find(|l| l["invariant"] == "do")
        .expect("a Do report line");
    assert_eq!(do_line["value"], 7);
    assert!(lines
        .iter()
        .any(|l| l["claim"] == "T1.4/do-equals-loewy" && l["status"] == "pass"));
}

#[test]
fn budget_exhaustion_exits_two_with_lower_bound() {
    let out = zerosum(&[
        "invariant",
        "G3(3,2,2,1)",
        "--which",
        "do",
        "--budget-nodes",
        "1000",
    ]);
    assert_eq!(code(&out), 2);
    let lines = json_lines(&out);
    assert_eq!(lines[0]["value"], "undetermined");
    assert_eq!(lines[0]["certificate"]["kind"], "lower-bound");
    assert_eq!(lines[0]["certificate"]["witness"]["len"], 12);
    assert_eq!(lines[0]["budget_exhausted"], true);
}

#[test]
fn invalid_input_exits_three() {
    for args in [
        vec!["invariant", "G2(1,1,1)", "--which", "d"],
        vec!["invariant", "dsd(3", "--which", "d"],
        vec!["invariant", "what(3)", "--which", "d"],
        vec!["invariant", "dsd(3)", "--which", "zeta"],
        vec!["verify", "T9.9", "dsd(3)"],
        vec!["invariant", "cyclic(100000)", "--which", "d"],
    ] {
        let out = zerosum(&args);
        assert_eq!(code(&out), 3, "args {args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = zerosum(&["invariant", "G2(1,1,1)", "--which", "d"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("α+β>3"), "constraint named: {err}");
}

#[test]
fn group_info_profile() {
    let out = zerosum(&["group", "info", "dsd(4)"]);
    assert_eq!(code(&out), 0);
    let line = &json_lines(&out)[0];
    assert_eq!(line["claim"], "group-info");
    assert_eq!(line["order"], 8);
    assert_eq!(line["certificate"]["is_abelian"], false);
    assert_eq!(line["certificate"]["p"], 2);
    assert_eq!(line["certificate"]["has_cyclic_subgroup_of_index_p"], true);
    assert_eq!(line["certificate"]["min_generators"], 2);
}

#[test]
fn catalog_listing_and_suite() {
    let out = zerosum(&["catalog", "--max-order", "8"]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    let specs: Vec<&str> = lines.iter().map(|l| l["spec"].as_str().unwrap()).collect();
    assert!(specs.contains(&"G1(1,1,1)"));
    assert!(specs.contains(&"G4(1)"));
    assert!(specs.contains(&"dsd(3)"));
    assert!(!specs.iter().any(|s| s.starts_with("G2")));

    let out = zerosum(&["catalog", "--max-order", "16", "--suite", "full"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let lines = json_lines(&out);
    assert!(lines
        .iter()
        .any(|l| l["claim"] == "loewy-cross-check" && l["status"] == "pass"));
    assert!(lines
        .iter()
        .any(|l| l["claim"] == "lemma2.7-chain" && l["status"] == "pass"));
    assert!(!lines.iter().any(|l| l["status"] == "fail"));
}

#[test]
fn props_suites_pass() {
    let out = zerosum(&["props", "--seed", "7", "--trials", "30"]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    for l in &lines {
        assert_eq!(l["status"], "pass", "{l}");
        if l["claim"] != "lemma2.12-set-covering" {
            // the covering suite is exhaustive, not seeded
            assert_eq!(l["certificate"]["seed"], 7);
        }
    }
    let names: Vec<&str> = lines.iter().map(|l| l["claim"].as_str().unwrap()).collect();
    assert!(names.contains(&"lemma2.10-gao-lu"));
    assert!(names.contains(&"lemma2.11-disjoint-pairs"));
    assert!(names.contains(&"lemma2.12-set-covering"));
}

#[test]
fn worker_counts_give_identical_value_and_certificate() {
    let run = |workers: &str| {
        let out = zerosum(&[
            "invariant",
            "dsd(4)",
            "--which",
            "d,do,e",
            "--workers",
            workers,
        ]);
        assert_eq!(code(&out), 0);
        json_lines(&out)
            .into_iter()
            .map(|l| {
                (
                    l["value"].clone(),
                    serde_json::to_string(&l["certificate"]).unwrap(),
                    l["nodes"].clone(),
                )
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn cache_replays_and_rejects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache_path = dir.path().join("cache.jsonl");
    let cache_arg = cache_path.to_str().unwrap();

    let out1 = zerosum(&["invariant", "dsd(3)", "--which", "d", "--cache", cache_arg]);
    assert_eq!(code(&out1), 0);
    assert!(cache_path.exists());
    let out2 = zerosum(&["invariant", "dsd(3)", "--which", "d", "--cache", cache_arg]);
    assert_eq!(code(&out2), 0);
    assert_eq!(out1.stdout, out2.stdout, "replay must not change the line");

    // corrupt the cached witness: swap its elements for identities
    let text = std::fs::read_to_string(&cache_path).unwrap();
    let corrupted = text.replace("\"elems\":[[1,\"g1\",2],[3,\"h\",1]]", "\"elems\":[[0,\"1\",3]]");
    assert_ne!(text, corrupted, "corruption applied");
    std::fs::write(&cache_path, corrupted).unwrap();
    let out3 = zerosum(&["invariant", "dsd(3)", "--which", "d", "--cache", cache_arg]);
    assert_eq!(code(&out3), 1, "rejected cache takes the loud path");
    assert!(String::from_utf8_lossy(&out3.stderr).contains("cache rejected"));
}

#[test]
fn out_file_collects_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = zerosum(&[
        "invariant",
        "cyclic(5)",
        "--which",
        "d,do",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert_eq!(text.lines().count(), 2);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["value"], 4);
}

#[test]
fn loewy_invariants_via_cli() {
    let out = zerosum(&[
        "invariant",
        "G2(2,2,1)",
        "--which",
        "loewy-jennings,loewy-direct",
    ]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    assert_eq!(lines[0]["value"], 7);
    assert_eq!(lines[1]["value"], 7);
    // Loewy on a non-p-group is an input error
    let out = zerosum(&["invariant", "dsd(3)", "--which", "loewy-jennings"]);
    assert_eq!(code(&out), 3);
}
