use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplegames"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const UNSC: &str = r#"{"quota": "39", "weights": ["7","7","7","7","7","1","1","1","1","1","1","1","1","1","1"]}"#;
const TWO_PAIRS: &str = r#"{"players": ["a","b","c","d"], "min_winning": [["a","b"],["c","d"]]}"#;

#[test]
fn weights_of_weighted_and_nonweighted_games() {
    let dir = TempDir::new().unwrap();
    let unsc = write(&dir, "unsc.json", UNSC);
    let out = run(&["weights", "--game", unsc.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["weighted"], true);

    let pairs = write(&dir, "pairs.json", TWO_PAIRS);
    let out = run(&["weights", "--game", pairs.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["weighted"], false);
    assert_eq!(v["certificate"]["x"].as_array().unwrap().len(), 2);
}

#[test]
fn certificate_check_sets_exit_code() {
    let dir = TempDir::new().unwrap();
    let pairs = write(&dir, "pairs.json", TWO_PAIRS);
    let good = write(
        &dir,
        "good.json",
        r#"{"x": [["a","b"],["c","d"]], "y": [["a","c"],["b","d"]]}"#,
    );
    let bad = write(&dir, "bad.json", r#"{"x": [["a","b"]], "y": [["a","b"]]}"#);
    let g = pairs.to_str().unwrap();
    assert_eq!(
        run(&["certificate", "--game", g, "--check", good.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["certificate", "--game", g, "--check", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn certificate_search_reports_none_for_weighted_games() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "maj.json",
        r#"{"players": 3, "min_winning": [[0,1],[0,2],[1,2]]}"#,
    );
    let out = run(&["certificate", "--game", g.to_str().unwrap(), "--max-len", "2"]);
    assert!(out.status.success());
    assert_eq!(json(&out), Value::String("none found ≤ 2".into()));
}

#[test]
fn canon_of_security_council() {
    let dir = TempDir::new().unwrap();
    let unsc = write(&dir, "unsc.json", UNSC);
    let v = json(&run(&["canon", "--game", unsc.to_str().unwrap()]));
    assert_eq!(v["ideal_weighted"], true);
    assert_eq!(v["heads"].as_array().unwrap().len(), 6);
}

#[test]
fn canon_reasons() {
    let dir = TempDir::new().unwrap();
    let pairs = write(&dir, "pairs.json", TWO_PAIRS);
    let v = json(&run(&["canon", "--game", pairs.to_str().unwrap()]));
    assert_eq!(v["reason"], "not complete");
    let dummy = write(&dir, "dummy.json", r#"{"players": 3, "min_winning": [[0,1]]}"#);
    let v = json(&run(&["canon", "--game", dummy.to_str().unwrap()]));
    assert_eq!(v["reason"], "dummies present");
}

#[test]
fn compose_then_decompose() {
    let dir = TempDir::new().unwrap();
    let outer = write(
        &dir,
        "outer.json",
        r#"{"players": ["x","y","p"], "min_winning": [["x","y"],["x","p"],["y","p"]]}"#,
    );
    let inner = write(
        &dir,
        "inner.json",
        r#"{"players": ["u","v"], "min_winning": [["u","v"]]}"#,
    );
    let out = run(&[
        "compose",
        "--outer",
        outer.to_str().unwrap(),
        "--pivot",
        "p",
        "--inner",
        inner.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let composed = write(&dir, "c.json", &String::from_utf8(out.stdout).unwrap());
    let v = json(&run(&["decompose", "--game", composed.to_str().unwrap(), "--all"]));
    let supports: Vec<&Value> = v.as_array().unwrap().iter().map(|d| &d["support"]).collect();
    assert!(supports.contains(&&serde_json::json!(["u", "v"])));
}

#[test]
fn make_and_classify() {
    let dir = TempDir::new().unwrap();
    let out = run(&["make", "--family", "B3", "--n", "3,3", "--k", "3,4"]);
    assert!(out.status.success());
    let g = write(&dir, "b3.json", &String::from_utf8(out.stdout).unwrap());
    let v = json(&run(&["classify", "--game", g.to_str().unwrap()]));
    assert_eq!(v["family"], "B3");
    assert_eq!(
        run(&["make", "--family", "B3", "--n", "3,3", "--k", "2,4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn case_certificate_validates() {
    let out = run(&[
        "paper-cert",
        "--case",
        "B2_level2",
        "--n",
        "2,3",
        "--k",
        "2,3",
        "--inner-size",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn enumerate_counts() {
    assert_eq!(json(&run(&["enumerate", "--n", "3"])).as_array().unwrap().len(), 19);
    assert_eq!(
        json(&run(&["enumerate", "--n", "3", "--collapse-iso"]))
            .as_array()
            .unwrap()
            .len(),
        9
    );
    assert_eq!(run(&["enumerate", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn census_csv_has_a_row_per_game() {
    let out = run(&["verify", "--suite", "census", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 168);
    assert!(text.lines().next().unwrap().contains("weighted"));
}

#[test]
fn verify_elgot_passes() {
    let out = run(&["verify", "--suite", "elgot"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "--game", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn analyze_reports_roles() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"players": ["a","b","c"], "min_winning": [["a","b"],["a","c"]]}"#,
    );
    let v = json(&run(&["analyze", "--game", g.to_str().unwrap()]));
    assert_eq!(v["vetoers"], serde_json::json!(["a"]));
    assert_eq!(v["complete"], true);
    let csv = run(&["analyze", "--game", g.to_str().unwrap(), "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("key,value"));
}
