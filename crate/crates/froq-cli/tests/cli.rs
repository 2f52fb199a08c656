//! End-to-end checks of the `froq` binary: exit codes, output formats and
//! byte-level determinism.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn froq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_froq")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

const FLU: &str = "a1,a2,a3,d\n0,0.9,0.9,1\n0.9,0.95,0.95,1\n0,1,0,0\n0.9,0,0,0\n";

#[test]
fn demo_passes_and_is_deterministic() {
    let a = froq(&["demo", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    let b = froq(&["demo", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"passed\": true"));
}

#[test]
fn distmat_reproduces_reference_tables_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_temp(&dir, "flu.csv", FLU);
    let measure = write_temp(
        &dir,
        "expert.json",
        &serde_json::to_string(&froq::flu::expert_measure_file()).unwrap(),
    );

    let out = froq(&[
        "distmat",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "explicit",
        "--measure-file",
        measure.to_str().unwrap(),
        "--p",
        "1",
        "--round",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("x1,0.00,0.13,0.24,0.90"), "{text}");
    assert!(text.contains("x3,0.24,0.23,0.00,0.20"), "{text}");

    // additive weights give the weighted-average table
    let out = froq(&[
        "distmat",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "additive",
        "--weights",
        "0.2,0.4,0.4",
        "--p",
        "1",
        "--round",
        "2",
    ]);
    assert!(stdout(&out).contains("x1,0.00,0.22,0.40,0.90"));

    // gamma fit reproduces the fuzzy-rough table in json form
    let out = froq(&[
        "distmat",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "gamma-d",
        "--p",
        "1",
        "--format",
        "json",
        "--round",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["distances"][0][1], 0.05);
    assert_eq!(v["distances"][2][3], 0.34);
}

#[test]
fn eval_loo_matches_reference_accuracies() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_temp(&dir, "flu.csv", FLU);
    let out = froq(&[
        "eval",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--loo",
        "--kind",
        "gamma-d",
        "--p",
        "1",
        "--k",
        "1",
        "--measure-scope",
        "global",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["accuracy"], 1.0);

    let out = froq(&[
        "eval",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--loo",
        "--kind",
        "counting",
        "--normalized",
        "--p",
        "1",
        "--k",
        "1",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["accuracy"], 0.5);

    // per-fold refit (the default scope) gives the honest 0.75
    let out = froq(&[
        "eval",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--loo",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["accuracy"], 0.75);

    // the stratified 2-fold regression anchor at the default seed
    let out = froq(&[
        "eval",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kfold",
        "2",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["accuracy"], 0.75);
}

#[test]
fn classify_and_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_temp(&dir, "flu.csv", FLU);

    // happy path
    let queries = write_temp(&dir, "q.csv", "a1,a2,a3\n0.1,0.95,0.9\n");
    let out = froq(&[
        "classify",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--queries",
        queries.to_str().unwrap(),
        "--k",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("query 1: label 1"));

    // arity-mismatched query file: usage error
    let bad = write_temp(&dir, "bad.csv", "a1,a2\n0.1,0.95\n");
    let out = froq(&[
        "classify",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--queries",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // unknown flag: clap usage error
    let out = froq(&["classify", "--nope"]);
    assert_eq!(out.status.code(), Some(2));

    // computation error: delta-d degenerates on cross-class duplicates
    let dup = write_temp(&dir, "dup.csv", "a1,a2,d\n0.5,0.5,p\n0.5,0.5,q\n0.1,0.9,p\n");
    let out = froq(&[
        "eval",
        "--input",
        dup.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "delta-d",
        "--loo",
        "--measure-scope",
        "global",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
}

#[test]
fn measure_dump_roundtrips_through_distmat() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_temp(&dir, "flu.csv", FLU);
    let dumped = dir.path().join("gamma.json");
    let out = froq(&[
        "measure",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "gamma-d",
        "--all",
        "--output",
        dumped.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // the dump is valid measure-file JSON with all 8 subsets
    let text = std::fs::read_to_string(&dumped).unwrap();
    let file = froq::MeasureFile::from_json(&text).unwrap();
    assert_eq!(file.entries.len(), 8);

    // feeding the dump back as an explicit measure reproduces the matrix;
    // the fitted route evaluates chains incrementally, so agreement is
    // numerical (well under 1e-12), not bitwise
    let direct = froq(&[
        "distmat",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "gamma-d",
        "--p",
        "1",
        "--format",
        "json",
    ]);
    let via_file = froq(&[
        "distmat",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "explicit",
        "--measure-file",
        dumped.to_str().unwrap(),
        "--p",
        "1",
        "--format",
        "json",
    ]);
    let a: serde_json::Value = serde_json::from_str(&stdout(&direct)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&via_file)).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let x = a["distances"][i][j].as_f64().unwrap();
            let y = b["distances"][i][j].as_f64().unwrap();
            assert!((x - y).abs() <= 1e-12, "({i},{j}): {x} vs {y}");
        }
    }
}

#[test]
fn measure_audit_flags_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_temp(&dir, "flu.csv", FLU);
    let out = froq(&[
        "measure",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "counting",
        "--normalized",
        "--subsets",
        "a1;a2,a3;empty",
        "--audit",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["audit"]["monotone"], true);
    assert_eq!(v["measure"]["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn thread_flag_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_temp(&dir, "flu.csv", FLU);
    let run = |threads: &str| {
        froq(&[
            "--threads",
            threads,
            "distmat",
            "--input",
            data.to_str().unwrap(),
            "--no-normalize",
            "--kind",
            "gamma-d",
            "--p",
            "1",
            "--format",
            "json",
        ])
    };
    let one = run("1");
    let eight = run("8");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn normalization_is_applied_unless_disabled() {
    let dir = tempfile::tempdir().unwrap();
    // a1 spans [0, 2]: raw values are out of the unit box
    let data = write_temp(&dir, "wide.csv", "a1,a2,d\n0,0.2,u\n2,0.8,v\n1,0.5,u\n");
    // without --no-normalize the data is rescaled and the run succeeds
    let out = froq(&[
        "distmat",
        "--input",
        data.to_str().unwrap(),
        "--kind",
        "counting",
        "--p",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // asserting in-range data that is not in range is a validation error
    let out = froq(&[
        "distmat",
        "--input",
        data.to_str().unwrap(),
        "--no-normalize",
        "--kind",
        "counting",
        "--p",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside [0,1]"));
}
