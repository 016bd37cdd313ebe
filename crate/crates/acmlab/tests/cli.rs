//! Integration tests for the `acmlab` binary: exit-code contract, job files,
//! output formats, and byte-level determinism of written reports.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_acmlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const QUADRIC: [&str; 12] = [
    "--poly", "x0", "--poly", "x2", "--poly", "x4", "--poly", "x1", "--poly", "x3", "--poly",
    "x5",
];

const CUBIC: [&str; 12] = [
    "--poly", "x0", "--poly", "x1", "--poly", "x2", "--poly", "x3^2", "--poly", "x4^2", "--poly",
    "x5^2",
];

#[test]
fn construct_quadric_succeeds() {
    let out = run(&[&["construct"], &QUADRIC[..]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS pfaffian_is_f"), "{text}");
}

#[test]
fn construct_json_report_is_valid() {
    let out = run(&[&["construct"], &QUADRIC[..], &["--format", "json"]].concat());
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["e"], -1);
    assert_eq!(v["smooth"], true);
    assert_eq!(v["betti_admissible"], true);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["pass"], true, "check {} failed", c["name"]);
    }
}

#[test]
fn verify_quadric_quick_suite_passes() {
    let out = run(&[&["verify"], &QUADRIC[..], &["--suite", "quick", "--format", "json"]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["expect_split"], false);
    let obstruction = &v["obstruction"];
    assert_eq!(obstruction["dims"]["-2"], 1);
}

#[test]
fn verify_split_comparison_bundle() {
    let out = run(&[
        "verify",
        "--poly",
        "x0*x1 + x2*x3 + x4*x5",
        "--expect-split",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], true);
}

#[test]
fn verify_wrong_split_expectation_exits_one() {
    // the quadric bundle does not split, so expecting a split is a check
    // failure (exit 1), not a usage error
    let out = run(&[&["verify"], &QUADRIC[..], &["--expect-split", "--suite", "quick"]].concat());
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    // a single polynomial without --expect-split cannot build a Pfaffian
    let out = run(&[
        "verify",
        "--poly",
        "x0*x1 + x2*x3 + x4*x5",
        "--suite",
        "quick",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cohomology_table_text_and_window() {
    let out = run(&[&["cohomology"], &QUADRIC[..], &["--module", "e", "--window", "-3:3"]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("h^0"), "{text}");
    assert!(text.contains("chi"), "{text}");
}

#[test]
fn cohomology_unknown_module_exits_two() {
    let out = run(&[&["cohomology"], &QUADRIC[..], &["--module", "nonsense"]].concat());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_degree_two_and_edge_cases() {
    let out = run(&["enumerate", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["enumerate", "--degree", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["candidates"].as_array().unwrap().len(), 1);
    // d = 1: empty list plus an explanatory note, still success
    let out = run(&["enumerate", "--degree", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["candidates"].as_array().unwrap().is_empty());
    assert!(v["note"].as_str().unwrap().len() > 0);
    // nonsensical degree: usage error
    let out = run(&["enumerate", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // unsupported ambient dimension
    let out = run(&["enumerate", "--degree", "2", "--ambient", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_or_malformed_input_exits_two() {
    let out = run(&["construct"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["construct", "--poly", "x0", "--poly", "x1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[&["verify"], &QUADRIC[..], &["--window", "banana"]].concat());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[&["construct"], &QUADRIC[..], &["--field", "fp:4"]].concat());
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn written_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            &["construct"],
            &QUADRIC[..],
            &["--out", path.to_str().unwrap()],
        ]
        .concat());
        assert_eq!(out.status.code(), Some(0));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b, "construct reports must be deterministic");
    // no stray temporaries from the atomic write
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().ends_with(".tmp"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn job_files_toml_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let toml_path = dir.path().join("job.toml");
    std::fs::write(
        &toml_path,
        r#"
poly = ["x0", "x2", "x4", "x1", "x3", "x5"]
suite = "quick"
format = "json"
"#,
    )
    .unwrap();
    let out = run(&["verify", "--job", toml_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], true);

    let json_path = dir.path().join("job.json");
    std::fs::write(
        &json_path,
        r#"{ "degree": 3, "e": -1, "format": "json" }"#,
    )
    .unwrap();
    let out = run(&["enumerate", "--job", json_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], 3);

    // flags override job-file values
    let out = run(&[
        "enumerate",
        "--job",
        json_path.to_str().unwrap(),
        "--degree",
        "2",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], 2);

    // unknown keys are rejected, not silently ignored
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "polly = [\"x0\"]\n").unwrap();
    let out = run(&["verify", "--job", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_cubic_full_suite_passes() {
    let out = run(&[&["verify"], &CUBIC[..], &["--format", "json"]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["degree"], 3);
    let dims = &v["obstruction"]["dims"];
    assert_eq!(dims["-3"], 1);
    assert_eq!(dims["-2"], 3);
    assert_eq!(dims["-1"], 3);
    assert_eq!(dims["0"], 1);
}

#[test]
fn help_succeeds() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(Path::new(env!("CARGO_BIN_EXE_acmlab")).exists());
}
