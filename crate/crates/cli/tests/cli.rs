//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tppforge"))
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tppforge-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn search_exit_codes_match_contract() {
    // Exhaustive search with no triples: exit 1.
    let out = bin()
        .args(["search", "--family", "dihedral:8", "--m", "3", "--all"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("exhausted"));

    // A realized search: exit 0 with at least one triple.
    let out = bin().args(["search", "--family", "s:3", "--m", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("triple"));

    // Size gate: exit 3.
    let out = bin().args(["search", "--family", "cyclic:44", "--m", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    // Invalid input: exit 2.
    let out = bin().args(["search", "--family", "nosuch:3", "--m", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["search", "--m", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "missing group source must be invalid");
}

#[test]
fn search_json_report_shape() {
    let out = bin()
        .args(["search", "--family", "s:3", "--m", "2", "--all", "--format", "json", "--verify", "10"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "search");
    assert_eq!(v["group"]["order"], 6);
    assert!(v["group"]["fingerprint"].as_str().unwrap().len() == 16);
    assert_eq!(v["status"], "found");
    assert!(!v["triples"].as_array().unwrap().is_empty());
    assert_eq!(v["baseline_candidate_count"], 60);
    assert_eq!(v["verification"]["all_verified"], true);
    // Every triple is a basic {order, s, t, u} object.
    for t in v["triples"].as_array().unwrap() {
        assert_eq!(t["order"], 6);
        assert_eq!(t["s"][0], 0);
        assert_eq!(t["t"][0], 0);
        assert_eq!(t["u"][0], 0);
    }
}

#[test]
fn shard_plan_totals() {
    let out = bin()
        .args(["shard-plan", "--order", "48", "--m", "5", "--shard-size", "10000", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total_rows"], 178_365);
    assert_eq!(v["shard_count"], 18);
    assert_eq!(v["shards"][17]["row_count"], 8365);

    let out = bin()
        .args(["shard-plan", "--order", "88", "--m", "5", "--shard-size", "10000", "--format", "json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total_rows"], 2_225_895);

    let out = bin()
        .args(["shard-plan", "--order", "6", "--m", "2", "--shard-size", "10", "--format", "json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total_rows"], 5);
    assert_eq!(v["shard_count"], 1);

    let out = bin()
        .args(["shard-plan", "--order", "6", "--m", "2", "--shard-size", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn screen_reproduces_bounds() {
    let data = data_dir().join("candidates.csv");
    let out = bin()
        .args(["screen", "--data", data.to_str().unwrap(), "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let expect = [
        ("[48,3]", 90, 118),
        ("[54,10]", 88, 110),
        ("[55,1]", 107, 205),
        ("[60,5]", 119, 196),
        ("[78,3]", 117, 117),
        ("[88,10]", 121, 121),
    ];
    for (gap, lower, upper) in expect {
        let row = text
            .lines()
            .find(|l| l.starts_with(&format!("\"{gap}\"")))
            .unwrap_or_else(|| panic!("{gap} missing:\n{text}"));
        assert!(row.contains(&format!(",{lower},{upper},")), "{gap}: {row}");
    }
}

#[test]
fn screen_respects_data_env_var() {
    let out = bin()
        .env("TPPFORGE_DATA", data_dir())
        .args(["screen", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 37);
}

#[test]
fn screen_reports_row_errors_without_aborting() {
    let file = tmp("broken.csv");
    std::fs::write(
        &file,
        "gap_id,order,pattern,cayley_file\n\
         \"[6,1]\",6,\"1^2,2^1\",\n\
         \"[oops]\",notanumber,\"1^1\",\n\
         \"[8,1]\",8,\"1^4,2^1\",\n",
    )
    .unwrap();
    let out = bin()
        .args(["screen", "--data", file.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "row errors surface as exit 2");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2, "good rows still screened");
    assert_eq!(v["errors"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_round_trip() {
    // Find a triple in S3 and verify it.
    let out = bin()
        .args(["search", "--family", "s:3", "--m", "2", "--format", "json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let triple_file = tmp("s3_triple.json");
    std::fs::write(&triple_file, serde_json::to_string(&v["triples"][0]).unwrap()).unwrap();

    let out = bin()
        .args([
            "verify",
            "--family",
            "s:3",
            "--triple",
            triple_file.to_str().unwrap(),
            "--trials",
            "100",
            "--seed",
            "7",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["trials"], 100);

    // A non-triple fails with exit 1 and a counterexample.
    let bad = tmp("s3_bad.json");
    std::fs::write(&bad, r#"{"order":6,"s":[0,1],"t":[0,1],"u":[0,1]}"#).unwrap();
    let out = bin()
        .args([
            "verify",
            "--family",
            "s:3",
            "--triple",
            bad.to_str().unwrap(),
            "--trials",
            "100",
            "--seed",
            "7",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], false);
    assert!(v["first_failure"].is_object());
}

#[test]
fn group_emit_validate_info_roundtrip() {
    let file = tmp("c3.tab");
    let out = bin()
        .args(["group", "emit", "--family", "cyclic:3", "--out", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = bin().args(["group", "validate", file.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ok"));

    // Corrupt one entry: duplicate in a row.
    let corrupted = tmp("c3_bad.tab");
    std::fs::write(&corrupted, "3\n0 1 2\n1 1 0\n2 0 1\n").unwrap();
    let out = bin().args(["group", "validate", corrupted.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Latin"));

    let out = bin()
        .args(["group", "info", "--family", "alternating:5", "--format", "json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 60);
    assert_eq!(v["abelian"], false);
    assert_eq!(v["class_count"], 5);
    assert_eq!(v["index2_subgroups"], 0);
}

/// Interrupt a sharded run, resume it, and compare against an uninterrupted
/// run: identical modulo timestamps.
#[test]
fn checkpoint_resume_equivalence() {
    let table = data_dir().join("groups/c3cubed.tab");
    let table = table.to_str().unwrap();
    let full_path = tmp("full.json");
    let resumed_path = tmp("resumed.json");
    let cp = tmp("cp.json");
    let _ = std::fs::remove_file(&cp);

    let run = |extra: &[&str], out_file: &Path| {
        let mut args = vec![
            "search", "--table", table, "--m", "3", "--all", "--shard-size", "100",
            "--format", "json", "--out",
        ];
        args.push(out_file.to_str().unwrap());
        args.extend_from_slice(extra);
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    };

    run(&[], &full_path);
    // Two interrupted legs plus the finishing leg.
    let cp_s = cp.to_str().unwrap();
    run(&["--checkpoint", cp_s, "--max-shards", "1"], &resumed_path);
    let paused: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&resumed_path).unwrap()).unwrap();
    assert_eq!(paused["status"], "paused");
    run(&["--checkpoint", cp_s, "--max-shards", "2"], &resumed_path);
    run(&["--checkpoint", cp_s], &resumed_path);

    let mut full: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&full_path).unwrap()).unwrap();
    let mut resumed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&resumed_path).unwrap()).unwrap();
    for v in [&mut full, &mut resumed] {
        v["stats"].as_object_mut().unwrap().remove("elapsed_ms");
        v.as_object_mut().unwrap().remove("sharding");
    }
    assert_eq!(full, resumed, "resumed run differs from uninterrupted run");

    // Mismatched parameters are rejected.
    let out = bin()
        .args([
            "search", "--table", table, "--m", "2", "--all", "--shard-size", "100",
            "--checkpoint", cp_s,
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sharded_search_with_explicit_range() {
    // A single mid-range shard of the order-48 <5,5,5> search runs cleanly.
    let table = data_dir().join("groups/g48_3.tab");
    let out = bin()
        .args([
            "search",
            "--table",
            table.to_str().unwrap(),
            "--m",
            "5",
            "--all",
            "--start-row",
            "170000",
            "--row-count",
            "200",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    let code = out.status.code();
    assert!(code == Some(0) || code == Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["stats"]["rows_s_visited"], 200);
    assert!(v["stats"]["candidates_tested"].as_u64().unwrap() > 0);
}
