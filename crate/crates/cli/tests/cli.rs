//! End-to-end runs of the `concordance` binary. Expected outputs live in
//! `tests/golden`; set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(args)
        .current_dir(root())
        .env("CONCORDANCE_THREADS", "2")
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = run(&full);
    (r.code, serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout)))
}

fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, expected, "output differs from {name}");
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("invariants_trefoil.txt", &["invariants", "data/trefoil.json"]),
    ("invariants_trefoil.json", &["--json", "invariants", "data/trefoil.json"]),
    ("invariants_figure_eight.json", &["--json", "invariants", "data/figure-eight.json"]),
    ("lt_profile_t25.json", &["--json", "lt-profile", "lib:T(2,5)", "--max-order", "10"]),
    ("rho_finite_trefoil.txt", &["rho", "--finite", "3", "data/trefoil.json"]),
    ("rho_integral_trefoil.json", &["--json", "rho", "--integral", "data/trefoil.json"]),
    ("bound.json", &["--json", "bound", "10", "--claimed", "697132800"]),
    (
        "jseq_mirror_trefoil.json",
        &["--json", "jseq", "--constant", "10", "--family", "data/mirror-trefoil-candidates.json", "--primes-max", "7"],
    ),
    ("family.txt", &["family", "data/family.json"]),
    ("certify.json", &["--json", "certify", "--family", "data/family.json", "--coeffs", "2,-1"]),
    ("certify.txt", &["certify", "--family", "data/family.json", "--coeffs", "-1,3"]),
    ("fox_derive.txt", &["fox", "derive", "x1x2X1X2", "--project", "q"]),
    ("tuples.json", &["--json", "tuples", "--level", "2", "--genus", "1", "--limit", "3"]),
    ("indep.json", &["--json", "indep", "--genus", "1", "--coeffs", "zp:5", "x1x2X1X2"]),
    ("membership.json", &["--json", "membership", "data/trefoil-group.json", "--word", "aB", "--level", "2"]),
];

#[test]
fn outputs_match_golden_files() {
    for (name, args) in GOLDEN {
        let r = run(args);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        golden(name, &r.stdout);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["--json", "jseq", "--constant", "10", "--count", "2", "--primes-max", "11"][..],
        &["--json", "certify", "--family", "data/family.json", "--coeffs", "1,1"],
        &["--json", "lt-profile", "data/figure-eight.json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn seed_does_not_change_results() {
    let base = run(&["--json", "indep", "--genus", "2", "x1x2X1X2", "x1x3X1X3", "x1x4X1X4"]);
    for seed in ["1", "7", "123456789"] {
        let other = run(&["--json", "--seed", seed, "indep", "--genus", "2", "x1x2X1X2", "x1x3X1X3", "x1x4X1X4"]);
        assert_eq!(base.stdout, other.stdout);
    }
}

#[test]
fn rho_of_trefoil_at_three() {
    let r = run(&["rho", "--finite", "3", "data/trefoil.json"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("= -4\n"));
    let (code, v) = json(&["rho", "--finite", "3", "data/trefoil.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "-4");
    assert_eq!(v["schema"], 1);
}

#[test]
fn jseq_written_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("seq.json");
    let (code, v) = json(&["jseq", "--constant", "10", "--primes-max", "11", "--output", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["schema"], 1);
    assert_eq!(written["items"], v["sequence"]["items"]);
    assert_eq!(v["verification"]["valid"], true);
}

/// A family directory whose J-sequence has been edited by `tamper`.
fn tampered_family(tamper: impl Fn(&mut Value)) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let data = root().join("data");
    std::fs::copy(data.join("family.json"), dir.path().join("family.json")).unwrap();
    let mut seq: Value = serde_json::from_str(&std::fs::read_to_string(data.join("jseq-c10.json")).unwrap()).unwrap();
    tamper(&mut seq);
    std::fs::write(dir.path().join("jseq-c10.json"), seq.to_string()).unwrap();
    dir
}

#[test]
fn certify_on_tampered_sequence_fails() {
    let dir = tampered_family(|s| s["items"][1]["prime"] = 3.into());
    let family = dir.path().join("family.json");
    let r = run(&["certify", "--family", family.to_str().unwrap(), "--coeffs", "1,1"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("increasing_primes"), "{}", r.stdout);
    assert!(r.stdout.contains("verdict: INVALID"));

    let (code, v) = json(&["certify", "--family", family.to_str().unwrap(), "--coeffs", "1,1"]);
    assert_eq!(code, 1);
    let c = &v["certificate"];
    assert_eq!(c["verdict"], "invalid");
    assert!(c["failures"].as_array().unwrap().iter().any(|f| f.as_str().unwrap().contains("increasing_primes")));
}

#[test]
fn certify_rejects_odd_arf_infection() {
    let t = tampered_family(|s| {
        let trefoil = serde_json::json!([[-1, 1], [0, -1]]);
        s["items"][0]["matrix"]["matrix"] = trefoil;
    });
    let family = t.path().join("family.json");
    let (code, v) = json(&["certify", "--family", family.to_str().unwrap(), "--coeffs", "1,0"]);
    assert_eq!(code, 1, "{v}");
    assert_eq!(v["error"]["kind"], "ArfNonzeroInfection");
}

#[test]
fn full_constant_reports_bound_too_small() {
    let (code, v) = json(&["certify", "--family", "data/family.json", "--coeffs", "1,0", "--constant", "bound"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SequenceBoundTooSmall");
}

#[test]
fn exhausted_search_exits_one_with_partial() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("fam.json");
    std::fs::write(&fam, r#"{"generators": [{"name": "fig8", "matrix": [[1, 1], [0, -1]]}], "max_summands": 4}"#)
        .unwrap();
    let (code, v) = json(&["jseq", "--constant", "10", "--primes-max", "7", "--family", fam.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SearchExhausted");
    assert!(v["partial"]["items"].as_array().unwrap().is_empty());
    assert_eq!(v["verification"]["valid"], true);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["frobnicate"],
        &["rho", "data/trefoil.json"],
        &["rho", "--finite", "3", "--integral", "data/trefoil.json"],
        &["invariants", "data/does-not-exist.json"],
        &["membership", "data/trefoil-group.json", "--word", "aB", "--level", "3"],
        &["membership", "data/trefoil-group.json", "--word", "aQ", "--level", "1"],
        &["indep", "--genus", "1", "--coeffs", "zp:4", "x1x2X1X2"],
        &["certify", "--family", "data/family.json", "--coeffs", "1,x"],
        &["certify", "--family", "data/family.json", "--coeffs", "1,2,3"],
    ];
    for args in cases {
        let (code, v) = json(args);
        assert_eq!(code, 2, "{args:?}: {v}");
        assert!(v["error"]["kind"].is_string() && v["error"]["message"].is_string(), "{args:?}");
        assert_eq!(v["schema"], 1);
    }
    let r = run(&["invariants", "data/does-not-exist.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error[Io]"));
}

#[test]
fn help_exits_zero() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("certify"));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(["bound", "3"])
        .current_dir(root())
        .env("CONCORDANCE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
