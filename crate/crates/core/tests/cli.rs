use std::fs;
use std::path::Path;

use shortlist_core::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use tempfile::TempDir;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("shortlist").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn complete_build_dumps_all_pairs() {
    let (code, out, _) = call(&["build", "--kind", "complete", "--left-len", "3", "--right-len", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.lines().count(), 32);
    assert_eq!(out.lines().next(), Some("000 00"));
}

#[test]
fn missing_k_is_a_usage_error() {
    let (code, _, err) = call(&["build", "--kind", "hk"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--k"));
    assert_eq!(call(&["build", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(call(&[]).0, EXIT_USAGE);
}

#[test]
fn hk_build_certify_match_round_trip() {
    let dir = TempDir::new().unwrap();
    let manifest = dir.path().join("h3.json");
    let (code, _, err) = call(&[
        "build", "--kind", "hk", "--k", "3", "--c", "2", "--cap", "6", "--seed", "42", "--out",
        p(&manifest),
    ]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let m: serde_json::Value = serde_json::from_str(&fs::read_to_string(&manifest).unwrap()).unwrap();
    let cert = &m["hk"]["certificates"][0];
    assert_eq!(cert["subset_size"], 2);
    assert_eq!(cert["required_neighbors"], 8);
    assert_eq!(cert["result"]["verdict"], "pass");

    let (code, out, _) = call(&["certify", "--graph", p(&manifest)]);
    assert_eq!(code, EXIT_PASS);
    let c: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(c["mode"]["kind"], "exhaustive");
    assert_eq!(c["mode"]["subsets"], 7140);

    let (code, out, _) = call(&["match", "--graph", p(&manifest), "--seed", "5"]);
    assert_eq!(code, EXIT_PASS);
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["streams"], 1000);
    assert!(r["max_discards"].as_u64().unwrap() <= 1);
    assert_eq!(r["pass"], true);

    // Out-of-universe label and an empty stream file.
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "011\n11\n").unwrap();
    let (code, _, err) = call(&["match", "--graph", p(&manifest), "--stream", p(&bad)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("label 11 "), "{err}");
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    let (code, out, _) = call(&["match", "--graph", p(&manifest), "--stream", p(&empty)]);
    assert_eq!(code, EXIT_PASS);
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["requests"], 0);
}

#[test]
fn star_counterexample_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("star.txt");
    fs::write(&dump, "# two nodes, one shared neighbor\n00 0\n01 0\n").unwrap();
    let (code, out, _) = call(&["certify", "--graph", p(&dump), "--size", "2", "--required", "2"]);
    assert_eq!(code, EXIT_FAIL);
    let c: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(c["result"]["witness"], serde_json::json!(["00", "01"]));
}

#[test]
fn sampled_mode_records_counts() {
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("k.txt");
    let (_, out, _) = call(&["build", "--kind", "complete", "--left-len", "4", "--right-len", "2"]);
    fs::write(&dump, out).unwrap();
    let (code, out, _) = call(&[
        "certify", "--graph", p(&dump), "--size", "3", "--required", "4", "--mode", "sampled",
        "--samples", "500", "--restarts", "7",
    ]);
    assert_eq!(code, EXIT_PASS);
    let c: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(c["mode"]["kind"], "adversarial+sampled");
    assert_eq!(c["mode"]["samples"], 500);
}

#[test]
fn disperser_certify() {
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("k.txt");
    fs::write(&dump, call(&["build", "--kind", "complete", "--left-len", "3", "--right-len", "2"]).1).unwrap();
    let (code, out, _) = call(&["certify", "--graph", p(&dump), "--size", "2", "--delta", "1/2"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert_eq!(call(&["certify", "--graph", p(&dump), "--size", "2", "--delta", "3/2"]).0, EXIT_USAGE);
}

#[test]
fn shortlist_corpus_and_emit_list() {
    let (code, out, err) = call(&[
        "shortlist", "--machine", &data("machine.tsv"), "--corpus", &data("corpus.txt"),
    ]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let reports: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    for r in reports.iter().filter(|r| r["in_range"] == true) {
        assert!(r["slack"].as_i64().unwrap() <= 3);
    }
    let (code, out, _) = call(&["shortlist", "--machine", &data("machine.tsv"), "--emit-list", "0110"]);
    assert_eq!(code, EXIT_PASS);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "1000110");
    assert_eq!(&lines[1..4], &["101", "1010", "1011"]);
}

#[test]
fn malformed_machine_reports_line() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.tsv");
    fs::write(&m, "01\t11\t2\n\n01 11 2\n").unwrap();
    let (code, _, err) = call(&["shortlist", "--machine", p(&m), "--emit-list", "01"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"k": 2, "c": 2, "seed": 9}"#).unwrap();
    let (code, a, _) = call(&["build", "--config", p(&cfg)]);
    assert_eq!(code, EXIT_PASS);
    let (_, b, _) = call(&["build", "--k", "2", "--seed", "9"]);
    assert_eq!(a, b);
    let (_, c, _) = call(&["build", "--config", p(&cfg), "--seed", "10"]);
    assert_ne!(a, c);
    fs::write(&cfg, r#"{"kk": 2}"#).unwrap();
    assert_eq!(call(&["build", "--config", p(&cfg)]).0, EXIT_USAGE);
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["build", "--k", "3", "--seed", "7"];
    assert_eq!(call(&args).1, call(&args).1);
    let args = ["list-size", "--from", "4", "--to", "9"];
    let (code, a, _) = call(&args);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(a, call(&args).1);
}

#[test]
fn edge_dump_match_defaults_length_to_longest_stream() {
    let dir = TempDir::new().unwrap();
    let dump = dir.path().join("star.txt");
    fs::write(&dump, "00 0\n01 0\n10 0\n").unwrap();
    let stream = dir.path().join("s.txt");
    fs::write(&stream, "00\n01\n00\n10\n").unwrap();
    let (code, out, err) = call(&["match", "--graph", p(&dump), "--stream", p(&stream), "--bound", "3"]);
    assert_eq!(code, EXIT_PASS, "{err}");
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["max_discards"], 2);
    assert_eq!(r["requests"], 4);
    let (code, _, _) = call(&["match", "--graph", p(&dump), "--stream", p(&stream), "--bound", "2"]);
    assert_eq!(code, EXIT_FAIL);
    let args = ["match", "--graph", p(&dump), "--stream", p(&stream), "--bound", "3", "--length", "2"];
    assert_eq!(call(&args).0, EXIT_USAGE);
    assert_eq!(call(&["match", "--graph", p(&dump), "--bound", "3"]).0, EXIT_USAGE);
}
