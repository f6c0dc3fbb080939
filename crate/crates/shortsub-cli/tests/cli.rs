use serde_json::Value;
use shortsub_cli::CliError;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn shortsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortsub")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_shortsub"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sus_json_fields() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.txt", "gcattgcgtaggt");
    let v = json(&shortsub(&["sus", &f]));
    assert_eq!(v["kind"], "sus");
    assert_eq!(v["start"], 1);
    assert_eq!(v["end"], 2);
    assert_eq!(v["length"], 2);
    assert_eq!(v["verified"], true);
    assert_eq!(v["sigma"], 4);
    assert_eq!(v["substring_hex"], "6361");
    assert!(v["case_used"].is_string());
    for key in ["ell_short", "tau_medium", "beta_medium", "tau_long"] {
        assert!(v["thresholds"][key].is_u64(), "{key}");
    }
    assert!(v.get("extension_letter").is_none());
}

#[test]
fn sus_all_tsv_lists_every_answer() {
    let out = with_stdin(&["sus", "-", "--all", "--output", "tsv"], b"gcattgcgtaggt");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("kind"));
    assert_eq!(lines.len(), 9);
}

#[test]
fn forced_thresholds_keep_the_answer() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.txt", &"abaababaabaab".repeat(20));
    let plain = json(&shortsub(&["sus", &f]));
    let forced = json(&shortsub(&["sus", &f, "--ell-short", "3", "--tau-medium", "1", "--beta-medium", "30", "--tau-long", "2"]));
    assert_eq!(plain["length"], forced["length"]);
    assert_eq!(forced["thresholds"]["tau_long"], 2);
}

#[test]
fn sas_and_exclusive() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.txt", "gcattgcgtaggt");
    let v = json(&shortsub(&["sas", &s]));
    assert_eq!(v["kind"], "sas");
    assert_eq!(v["length"], 2);

    let a = write(dir.path(), "a.txt", "abcab");
    let b = write(dir.path(), "b.txt", "cabca");
    let v = json(&shortsub(&["exclusive", &a, &b]));
    assert_eq!(v["length"], 4);
    assert_eq!(v["substring_hex"], "62636162");
    assert_eq!(v["verified"], true);

    let c = write(dir.path(), "c.txt", "xxabcabyy");
    let v = json(&shortsub(&["exclusive", &a, &c]));
    assert!(v["length"].is_null() && v["start"].is_null() && v["substring_hex"].is_null());
    assert_eq!(v["verified"], true);
}

#[test]
fn debruijn_output() {
    let v = json(&shortsub(&["debruijn", "--sigma", "2", "--k", "3"]));
    assert_eq!(v["sequence"], "0001011100");
    assert_eq!(v["kmers_verified"], true);
    let v = json(&shortsub(&["debruijn", "--sigma", "3", "--k", "2", "--prefix", "4"]));
    assert_eq!(v["length"], 4);
}

#[test]
fn to_binary_from_fasta() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.fa", ">seq\ngctctca\n");
    let v = json(&shortsub(&["to-binary", &f, "--format", "fasta", "--sus"]));
    assert_eq!(v["k"], 4);
    assert_eq!(v["bits"], "000011010000101100001111000010110000111100001011000010010000");
    assert_eq!(v["binary_sus"]["length"], 4);
    assert_eq!(v["mapped"]["length"], 1);
}

#[test]
fn verify_reports_matches() {
    let out = shortsub(&["verify", "--trials", "5", "--n", "80"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "5/5 oracle matches");
}

#[test]
fn bench_writes_tsv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bench.tsv");
    let out = shortsub(&["bench", "--sizes", "512,1024", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n\tsigma\top\tseconds\tthroughput\tanswer_length\tverified\tratio_to_baseline");
    assert_eq!(lines.count(), 14);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.txt");
    let out = shortsub(&["sus", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: io:"));

    let empty = write(dir.path(), "e.txt", "");
    let out = shortsub(&["sus", &empty]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty-input"));

    let s = write(dir.path(), "s.txt", "abcd");
    let out = shortsub(&["sas", &s, "--sigma", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariant_errors_map_to_three() {
    let e = CliError::Invariant("answer occurs twice".into());
    assert_eq!(e.exit_code(), 3);
    assert_eq!(e.to_string(), "error: invariant: answer occurs twice");
}
