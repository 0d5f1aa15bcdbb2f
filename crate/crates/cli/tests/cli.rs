use std::path::PathBuf;
use std::process::Command as Process;

use cohomlim::config::{group_json, RawConfig};
use cohomlim::{parse_config, parse_str, run, CliError, Command, Config, Options};
use cohomlim_core::{Error, FiniteGroup};

fn demo_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/demo.json")
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_cohomlim"))
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let p = dir.path().join("cfg.json");
    std::fs::write(&p, text).unwrap();
    p
}

const SABOTAGED: &str = r#"{
  "systems": {
    "bad": {
      "g": "cyclic:2",
      "leq": [[true, false, false], [true, true, false], [true, true, true]],
      "objects": [
        { "a": "cyclic:4", "action": "trivial" },
        { "a": "cyclic:2", "action": "trivial" },
        { "a": "cyclic:2", "action": "trivial" }
      ],
      "transitions": [
        { "from": 0, "to": 1, "image": [0, 1, 0, 1] },
        { "from": 1, "to": 2, "image": [0, 1] },
        { "from": 0, "to": 2, "image": [0, 0, 0, 0] }
      ]
    }
  }
}"#;

#[test]
fn minimal_config_has_one_group() {
    let cfg = parse_str(r#"{"groups": {"Z5": "cyclic:5"}}"#).unwrap();
    assert_eq!(cfg.groups.len(), 1);
    assert_eq!(cfg.groups["Z5"].order(), 5);
}

#[test]
fn undefined_references() {
    let err = parse_str(r#"{"systems": {"s": {"derived": "missing"}}}"#).unwrap_err();
    assert!(matches!(err.root(), CliError::UnknownReference(r) if r == "action missing"), "{err}");
    let err = parse_str(r#"{"actions": {"x": {"g": "Z9", "a": "cyclic:2", "kind": "trivial"}}}"#).unwrap_err();
    assert!(matches!(err.root(), CliError::UnknownReference(_)));
    let cfg = parse_str("{}").unwrap();
    let err = run(&Command::H1 { action: "inv23".into() }, &cfg, &Options::default()).unwrap_err();
    assert!(matches!(err, CliError::UnknownReference(_)));
}

#[test]
fn parse_errors_carry_lines() {
    let err = parse_str("{\n  \"groups\": {\n    \"Z2\": cyclic\n  }\n}").unwrap_err();
    assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn validation_errors_propagate() {
    let err = parse_str(r#"{"actions": {"x": {"g": "cyclic:2", "a": "cyclic:4", "kind": {"table": [[0,1,2,3],[1,2,3,0]]}}}}"#)
        .unwrap_err();
    assert!(matches!(err.root(), CliError::Core(Error::AutomorphismAxiom(1, 0, 0))), "{err}");
    let err = parse_str(r#"{"groups": {"bad": {"order": 2, "mul": [[0,1],[1,1]]}}}"#).unwrap_err();
    assert!(matches!(err.root(), CliError::Core(Error::NoInverse(1))));
    let err = parse_str(r#"{"groups": {"a": "b", "b": "a"}}"#).unwrap_err();
    assert!(matches!(err.root(), CliError::Validation(_)));
}

#[test]
fn demo_round_trips_through_serializer() {
    let cfg = parse_config(&demo_path()).unwrap();
    let again = parse_str(&cfg.to_json()).unwrap();
    assert_eq!(again.raw, cfg.raw);
    let reparsed: RawConfig = serde_json::from_str(&again.to_json()).unwrap();
    assert_eq!(reparsed, cfg.raw);
    assert!(cfg.actions.len() >= 10);
}

#[test]
fn group_json_round_trips() {
    for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(4).unwrap()] {
        let text = format!(r#"{{"groups": {{"g": {}}}}}"#, group_json(&g));
        let cfg = parse_str(&text).unwrap();
        assert_eq!(*cfg.groups["g"], g);
    }
}

#[test]
fn product_and_nested_names() {
    let cfg = parse_str(r#"{"groups": {"K": "product:(cyclic:2,cyclic:2)", "L": "product:(K,product:(cyclic:3,trivial))"}}"#)
        .unwrap();
    assert_eq!(cfg.groups["K"].order(), 4);
    assert_eq!(cfg.groups["L"].order(), 12);
}

#[test]
fn sabotaged_transition_is_reported() {
    let err = parse_str(SABOTAGED).unwrap_err();
    assert!(
        matches!(err.root(), CliError::Core(Error::NotFunctorial { r: 0, t: 1, u: 2, x: 1 })),
        "{err}"
    );
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["verify-all"]).arg(write_config(&dir, SABOTAGED)).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not functorial"));
}

#[test]
fn empty_config_passes_with_warning() {
    let report = run(&Command::VerifyAll, &Config::empty(), &Options::default()).unwrap();
    assert!(report.ok);
    assert!(report.warnings.iter().any(|w| w.contains("nothing was checked")));
    let dir = tempfile::tempdir().unwrap();
    let out = bin().args(["verify-all", "--deterministic"]).arg(write_config(&dir, "{}")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("warnings"));
}

#[test]
fn documented_examples() {
    let cfg = parse_config(&demo_path()).unwrap();
    let opts = Options::default();
    let r = run(&Command::H1 { action: "inv23".into() }, &cfg, &opts).unwrap();
    assert_eq!(r.results["classes"].as_array().unwrap().len(), 1);
    let r = run(&Command::Theta { system: "two_adic".into(), n: None }, &cfg, &opts).unwrap();
    assert_eq!(r.results["bijective"], true);
    let r = run(&Command::Hn { action: "triv22".into(), n: 2 }, &cfg, &opts).unwrap();
    assert_eq!(r.results["h"], 2);
}

#[test]
fn exit_codes() {
    let demo = demo_path();
    let status = |args: &[&str]| bin().args(args).arg(&demo).output().unwrap().status.code();
    assert_eq!(status(&["h1", "--action", "inv23"]), Some(0));
    assert_eq!(status(&["h1", "--action", "nope"]), Some(2));
    assert_eq!(status(&["hn", "--action", "conj_s3", "--n", "1"]), Some(2));
    assert_eq!(status(&["h1", "--action", "conj_d4", "--budget", "10"]), Some(3));
    let out = bin()
        .args(["h1", "--action", "conj_d4"])
        .arg(&demo)
        .env("COHOMLIM_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn report_exit_codes() {
    let ok = cohomlim::Report::new("x", true, serde_json::Value::Null);
    let failed = cohomlim::Report::new("x", false, serde_json::Value::Null);
    assert_eq!(cohomlim::report_exit_code(&ok), 0);
    assert_eq!(cohomlim::report_exit_code(&failed), 1);
}
