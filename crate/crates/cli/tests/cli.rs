use std::process::Command;

use trace_goppa::MatrixFp;
use trace_goppa_cli::{cmd_verify, parse_checks, BestKnown, Format, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trace-goppa"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn non_prime_characteristic_is_a_configuration_error() {
    let (code, _, err) = run(&["verify", "--p", "4", "--s", "1", "--m", "3"]);
    assert_eq!(code, 3);
    assert!(err.contains("not prime"), "{err}");
}

#[test]
fn bad_arguments_exit_3_and_help_exits_0() {
    assert_eq!(run(&["verify", "--p", "2"]).0, 3);
    assert_eq!(run(&["frobnicate", "--p", "2", "--s", "1", "--m", "3"]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["verify", "--p", "2", "--s", "2", "--m", "3", "--checks", "nope"]).0, 3);
    assert_eq!(run(&["window", "--p", "2", "--s", "2", "--m", "3", "--jmin", "1"]).0, 3);
    assert_eq!(run(&["window", "--p", "2", "--s", "2", "--m", "3", "--jmax", "-1"]).0, 3);
    assert_eq!(run(&["distance", "--p", "2", "--s", "2", "--m", "3", "--code", "Q"]).0, 3);
}

#[test]
fn modulus_override() {
    // x^3 + x^2 + 1
    let (code, out, _) = run(&["params", "--p", "2", "--s", "1", "--m", "3", "--modulus", "1,0,1,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 1, 1]));
    // reducible: x^3 + 1
    assert_eq!(run(&["params", "--p", "2", "--s", "1", "--m", "3", "--modulus", "1,0,0,1"]).0, 3);
    assert_eq!(run(&["params", "--p", "2", "--s", "1", "--m", "3", "--modulus", "1,1"]).0, 3);
}

#[test]
fn params_report_fields() {
    let (code, out, _) = run(&["params", "--p", "2", "--s", "3", "--m", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"]["n"], 448);
    assert_eq!(v["params"]["a"], 9);
    assert_eq!(v["params"]["b"], 73);
    assert_eq!(v["deg_h"], 72);
    let (_, out, _) = run(&["params", "--p", "2", "--s", "1", "--m", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dims"]["L"], 0);
    assert_eq!(v["degenerate"], true);
    let (_, out, _) = run(&["params", "--p", "3", "--s", "1", "--m", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bounds"]["trace_pary"], 13);
}

#[test]
fn inapplicable_checks_do_not_fail() {
    let (code, out, _) = run(&["verify", "--p", "2", "--s", "2", "--m", "3", "--checks", "q3_power,q5_power"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["applicable"], false);
    }
}

#[test]
fn verify_schema() {
    let (code, out, _) = run(&["verify", "--p", "2", "--s", "2", "--m", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["params", "checks", "bounds", "window"]);
    for k in ["p", "s", "m", "q", "n", "a", "b"] {
        assert!(v["params"].get(k).is_some(), "params.{k}");
    }
    for c in v["checks"].as_array().unwrap() {
        for k in ["name", "applicable", "vacuous", "pass", "details"] {
            assert!(c.get(k).is_some(), "check.{k}");
        }
    }
    assert_eq!(v["window"]["certified"], 48);
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    let p = path.to_str().unwrap();
    for (args, code) in [(["2", "2", "3"], "L"), (["3", "1", "3"], "M2")] {
        let (exit, _, _) = run(&["export", "--p", args[0], "--s", args[1], "--m", args[2], "--code", code, "--out", p]);
        assert_eq!(exit, 0);
        let text = std::fs::read_to_string(&path).unwrap();
        let m = MatrixFp::from_text(&text).unwrap();
        assert_eq!(m.to_text(), text);
        let header: Vec<usize> = text.lines().next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect();
        assert_eq!(header, [m.cols(), m.rows(), m.p() as usize]);
        let (_, again, _) = run(&["export", "--p", args[0], "--s", args[1], "--m", args[2], "--code", code]);
        assert_eq!(again, text);
    }
}

#[test]
fn distance_report_at_small_instance() {
    let (code, out, _) = run(&["distance", "--p", "2", "--s", "2", "--m", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["distance"]["exact"], 48);
    assert_eq!(v["distance"]["method"], "enumeration");
    let statuses: Vec<(&str, &str)> = v["reconcile"]["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["name"].as_str().unwrap(), x["status"].as_str().unwrap()))
        .collect();
    assert!(statuses.contains(&("trace_binary_floor", "consistent")));
    assert!(statuses.contains(&("trace_binary_strict", "sharp")));
}

#[test]
fn distance_falls_back_to_search() {
    let (code, out, _) =
        run(&["distance", "--p", "2", "--s", "2", "--m", "3", "--exact-limit", "0", "--iterations", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["distance"]["method"], "search");
    assert_eq!(v["distance"]["exact"], 48);
}

#[test]
fn projections() {
    let (code, csv, _) = run(&["window", "--p", "2", "--s", "2", "--m", "3", "--code", "L2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("path,value\n"));
    assert!(csv.contains("windows.0.hi,46\n"), "{csv}");
    let (_, text, _) = run(&["window", "--p", "2", "--s", "2", "--m", "3", "--code", "L2", "--format", "text"]);
    assert!(text.contains("windows.0.certified: 48\n"), "{text}");
}

#[test]
fn best_known_annotation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bkc.csv");
    std::fs::write(&path, "p,n,k,d\n2,48,1,48\n").unwrap();
    let loaded = BestKnown::load(&path).unwrap();
    assert_eq!(loaded.lookup(2, 48, 1).unwrap().d, 48);
    let (code, out, _) = run(&[
        "verify",
        "--p",
        "2",
        "--s",
        "2",
        "--m",
        "3",
        "--checks",
        "code_equality",
        "--bkc",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["bounds"]["best_known"]["d"], 48);
    assert_eq!(run(&["verify", "--p", "2", "--s", "2", "--m", "3", "--bkc", "/nonexistent.csv"]).0, 3);
}

#[test]
fn library_verify_is_deterministic() {
    let mut c = RunConfig::new(3, 1, 3);
    c.format = Format::Json;
    c.checks = parse_checks("all").unwrap();
    let a = cmd_verify(&c).unwrap();
    let b = cmd_verify(&c).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.exit, 0);
}
