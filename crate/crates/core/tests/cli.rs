//! The command layer: exit codes, JSON round trips and `verify`.

use std::path::{Path, PathBuf};
use std::process::Command;

use tmotive::cli::{execute, exit, Outcome};
use tmotive::report::Report;

fn input(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/inputs").join(name).display().to_string()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tmotive-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Outcome {
    execute(std::iter::once("tmotive").chain(args.iter().copied()))
}

#[test]
fn goldens_exit_codes() {
    let cases = [
        ("janet", "running.toml", exit::OK),
        ("analyze", "special.toml", exit::OK),
        ("analyze", "carlitz_square.toml", exit::OK),
        ("analyze", "quasi_periodic.toml", exit::NOT_FINITE),
        ("reverse", "carlitz_motive.toml", exit::OK),
        ("reverse", "square_motive.toml", exit::OK),
    ];
    for (cmd, file, code) in cases {
        let out = run(&[cmd, &input(file)]);
        assert_eq!(out.code, code, "{cmd} {file}: {}", out.stderr);
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn non_finite_output_still_reports_the_dimension() {
    let out = run(&["analyze", &input("quasi_periodic.toml")]);
    assert!(out.stdout.contains("rational dimension: 2"), "{}", out.stdout);
}

#[test]
fn input_errors() {
    assert_eq!(run(&["analyze", "/nonexistent/input.toml"]).code, exit::INPUT);
    assert_eq!(run(&["analyze", &input("special.toml"), "--bogus"]).code, exit::INPUT);
    assert_eq!(run(&["analyze", &input("special.toml"), "--order", "1,1"]).code, exit::INPUT);

    let bad = scratch("bad.toml", "[field]\np = 3\n[tmodule]\nD = [[\"T + t\"]]\n");
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.code, exit::INPUT);
    assert!(out.stderr.contains("line"), "{}", out.stderr);

    let syntax = scratch("syntax.toml", "[field\np = 3\n");
    assert_eq!(run(&["analyze", syntax.to_str().unwrap()]).code, exit::INPUT);
}

#[test]
fn help_is_not_an_error() {
    let out = run(&["--help"]);
    assert_eq!(out.code, exit::OK);
    for cmd in ["analyze", "reverse", "janet", "verify"] {
        assert!(out.stdout.contains(cmd));
    }
}

#[test]
fn reverse_rejects_a_non_effective_motive() {
    let m = scratch("t_motive.toml", "[field]\np = 3\n[motive]\nTheta = [[\"t\"]]\n");
    let out = run(&["reverse", m.to_str().unwrap()]);
    assert_eq!(out.code, exit::NOT_EFFECTIVE, "{}", out.stderr);
}

#[test]
fn json_round_trip() {
    for (cmd, file) in [("janet", "running.toml"), ("analyze", "special_comotive.toml"), ("reverse", "square_motive.toml")] {
        let out = run(&[cmd, &input(file), "--format", "json", "--oracle"]);
        assert_eq!(out.code, exit::OK, "{file}: {}", out.stderr);
        let rep: Report = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(rep.to_json().trim_end(), out.stdout.trim_end());
        assert!(rep.oracle.as_ref().unwrap().passed());
        let restored = rep.restore().unwrap();
        assert_eq!(restored.janet.pairs().len(), rep.janet.pairs.len());
    }
}

#[test]
fn verify_accepts_a_stored_report_and_catches_tampering() {
    let out = run(&["janet", &input("running.toml"), "--format", "json"]);
    let good = scratch("running.json", &out.stdout);
    let ok = run(&["verify", good.to_str().unwrap(), "--box", "3,4"]);
    assert_eq!(ok.code, exit::OK, "{}{}", ok.stdout, ok.stderr);
    assert!(ok.stdout.contains("passed"));

    let mut rep: Report = serde_json::from_str(&out.stdout).unwrap();
    let last = rep.janet.pairs.last_mut().unwrap();
    last.components[1] = "tau^2 - t^4".into();
    let bad = scratch("tampered.json", &rep.to_json());
    let v = run(&["verify", bad.to_str().unwrap(), "--box", "3,4", "--format", "json"]);
    assert_eq!(v.code, exit::VERIFY_FAILED, "{}{}", v.stdout, v.stderr);

    let junk = scratch("junk.json", "{ not json");
    assert_eq!(run(&["verify", junk.to_str().unwrap()]).code, exit::INPUT);
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tmotive");
    let status = Command::new(bin).args(["analyze", &input("quasi_periodic.toml")]).output().unwrap();
    assert_eq!(status.status.code(), Some(exit::NOT_FINITE));
    let status = Command::new(bin).args(["janet", &input("running.toml"), "--diagram", "ascii"]).output().unwrap();
    assert_eq!(status.status.code(), Some(exit::OK));
    assert!(String::from_utf8_lossy(&status.stdout).contains("k1"));
}
