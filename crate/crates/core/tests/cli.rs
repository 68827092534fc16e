use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use planefold::cli::json;
use planefold::cli::verify::{Check, Report};
use planefold::cli::{verdict, EXIT_VERIFY};

fn planefold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planefold")).args(args).output().expect("binary runs")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_terdragon_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let out = planefold(&["gen", "--family", "tri", "--spec", "+++", "--svg", arg(&svg)]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert!(text.contains("version=\"1.1\""));
    assert_eq!(text.matches("<path").count(), 1);
}

#[test]
fn gen_gosper_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = planefold(&["gen", "--family", "gosper", "--spec", "+", "--json", arg(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json::parse(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.edges.len(), 7);
    assert_eq!(doc.word, vec![1, 2, -1, -2, 0, -1]);
}

#[test]
fn gen_window_too_small() {
    let out = planefold(&["gen", "--family", "tri", "--spec", "++", "--covering", "--radius", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("WindowTooSmall"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn gen_parse_errors_exit_2() {
    assert_eq!(planefold(&["gen", "--family", "tri", "--spec", "+x"]).status.code(), Some(2));
    assert_eq!(planefold(&["gen", "--family", "hexagon", "--spec", "+"]).status.code(), Some(2));
    assert_eq!(planefold(&["gen", "--family", "tri", "--spec", "+", "--anchor", "1"]).status.code(), Some(2));
    assert_eq!(planefold(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["--family", "tri", "--spec", "+-+"],
        vec!["--family", "square", "--spec", "++-", "--anchor", "2,-1", "--dir", "3"],
        vec!["--family", "gosper", "--spec", "-+"],
        vec!["--family", "tri", "--spec", "+-", "--covering", "--radius", "6", "--class", "2"],
        vec!["--family", "gosper", "--spec", "+-", "--covering"],
    ] {
        let path = dir.path().join("doc.json");
        let mut full = vec!["gen", "--json", arg(&path)];
        full.extend(args.iter().copied());
        assert_eq!(planefold(&full).status.code(), Some(0), "{args:?}");
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(json::to_string(&json::parse(&text).unwrap()), text, "{args:?}");
    }
}

#[test]
fn verify_tri_selfavoid() {
    let out = planefold(&["verify", "--suite", "tri-selfavoid", "--max-n", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let counts: Vec<u64> = v["checks"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![2, 4, 8, 16, 32, 64, 128]);
    assert!(v["checks"][0]["millis"].is_u64());
}

#[test]
fn verify_gosper_extensions() {
    let out = planefold(&["verify", "--suite", "gosper-extensions"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
    assert_eq!(v["pass"], true);
}

#[test]
fn verify_lip_report() {
    let out = planefold(&["verify", "--suite", "lip", "--radius", "27"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["details"]["report"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["failing_cores"] == 0));
}

#[test]
fn verify_usage_errors() {
    let out = planefold(&["verify", "--suite", "lip", "--radius", "27", "--spec", "+-+-"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(planefold(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(planefold(&["verify", "--suite", "tri-selfavoid", "--max-n", "40"]).status.code(), Some(2));
}

#[test]
fn failed_report_names_first_counterexample() {
    let check = |pass: bool, ce: Option<&str>| Check {
        name: "c".into(),
        pass,
        count: 1,
        millis: 0,
        counterexample: ce.map(String::from),
    };
    let checks = vec![check(true, None), check(false, Some("spec +- at 3")), check(false, Some("later"))];
    let r = Report {
        suite: "s".into(),
        pass: false,
        first_counterexample: Some("spec +- at 3".into()),
        checks,
        details: None,
    };
    assert_eq!(verdict(&r).as_deref(), Some("s failed: spec +- at 3"));
    assert_eq!(EXIT_VERIFY, 4);
    assert_eq!(verdict(&Report { pass: true, ..r }), None);
}

#[test]
fn render_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"family\": \"tri\"").unwrap();
    assert_eq!(planefold(&["render", "--input", arg(&bad)]).status.code(), Some(2));
    let broken = dir.path().join("broken.json");
    fs::write(
        &broken,
        r#"{"family":"tri","spec":"+","start":[0,0],"dir":0,"word":[1,-1],"edges":[[0,0,1,0],[0,1,1,1]]}"#,
    )
    .unwrap();
    assert_eq!(planefold(&["render", "--input", arg(&broken)]).status.code(), Some(2));
    assert_eq!(planefold(&["render", "--input", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn render_junction_patch() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("patch.json");
    let out = planefold(&[
        "gen",
        "--family",
        "tri",
        "--spec",
        "++",
        "--covering",
        "--radius",
        "2",
        "--alpha",
        "plus",
        "--json",
        arg(&doc),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let svg1 = planefold(&["render", "--input", arg(&doc)]);
    let svg2 = planefold(&["render", "--input", arg(&doc)]);
    assert_eq!(svg1.status.code(), Some(0));
    assert_eq!(svg1.stdout, svg2.stdout);
    let text = String::from_utf8(svg1.stdout).unwrap();
    assert_eq!(text.matches("<path").count(), 3);
    // the junction sits at the origin; rounded curves never pass through it
    assert!(!text.contains(" 0.000000 0.000000"));
    let strokes: std::collections::HashSet<&str> =
        text.match_indices("stroke=\"#").map(|(i, _)| &text[i + 8..i + 16]).collect();
    assert_eq!(strokes.len(), 3);
}
