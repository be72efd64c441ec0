use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rtorsion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rtorsion")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rtorsion-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn circle_torsion() {
    let out = run(&["torsion", "--fixture", "circle3-t3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["torsion"]["value"]["coeff"], "1/2");
    assert_eq!(v["torsion"]["value"]["frame"], "H_*(K;F)");
    assert_eq!(v["routes_agree"], true);
}

#[test]
fn input_file_and_command_flag() {
    let path = fixtures_dir().join("circle4-t-2.json");
    let a = run(&["--command", "torsion", "--input", path.to_str().unwrap()]);
    let b = run(&["torsion", "--fixture", "circle4-t-2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn offset_moves_the_torsion() {
    let out = run(&["torsion", "--fixture", "circle3-t3", "--offset", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["torsion"]["value"]["coeff"], "1/6");
}

#[test]
fn verifications_pass() {
    for (thm, fixture) in [("11.2", "circle3-reflection"), ("6.4", "circle3-t3"), ("7.2", "circle3-diag23"), ("9.4", "circle4-t-2")] {
        let out = run(&["verify", thm, "--fixture", fixture]);
        assert_eq!(out.status.code(), Some(0), "{thm} on {fixture}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn subdivide_reports_invariance() {
    let out = run(&["subdivide", "--fixture", "circle3-t3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["invariant"], true);
    assert_eq!(v["refined"]["invariant"], true);
}

#[test]
fn non_square_matrix_is_rejected() {
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(fixtures_dir().join("circle3-t3.json")).unwrap()).unwrap();
    doc["representation"]["edges"][0]["matrix"] = serde_json::json!([["1", "2"]]);
    let path = scratch("nonsquare").join("doc.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["torsion", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = json(&out)["error"]["message"].as_str().unwrap().to_owned();
    assert!(msg.contains("edges[0]") && msg.contains("[0, 2]"), "{msg}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("1x2"));
}

#[test]
fn unknown_command_and_missing_input_are_input_errors() {
    assert_eq!(run(&["frobnicate", "--fixture", "circle3-t3"]).status.code(), Some(2));
    assert_eq!(run(&["torsion"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "99.9", "--fixture", "circle3-t3"]).status.code(), Some(2));
}

#[test]
fn unmet_hypothesis_exits_2() {
    for args in [&["pr", "--fixture", "sphere2"][..], &["verify", "6.2", "--fixture", "circle3-t3"], &["pr", "--fixture", "cw-circle-t3"]] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn output_is_deterministic_and_float_free() {
    for args in [
        &["selftest", "--seed", "7", "--instances", "20"][..],
        &["pr", "--fixture", "torus3-diag23"][..],
        &["rs-rhs", "--fixture", "circle5-t3"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stdout));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let text = String::from_utf8(a.stdout).unwrap();
        let floaty = float_token(&text);
        assert!(floaty.is_none(), "{args:?}: float token {floaty:?}");
    }
}

/// The first non-integer JSON number, if any.
fn float_token(text: &str) -> Option<String> {
    fn scan(v: &Value) -> Option<String> {
        match v {
            Value::Number(n) if !n.is_i64() && !n.is_u64() => Some(n.to_string()),
            Value::Array(a) => a.iter().find_map(scan),
            Value::Object(o) => o.values().find_map(scan),
            _ => None,
        }
    }
    scan(&serde_json::from_str(text).expect("json"))
}

#[test]
fn seed_changes_the_instances() {
    let a = run(&["selftest", "--seed", "1", "--instances", "5"]);
    let b = run(&["selftest", "--seed", "2", "--instances", "5"]);
    assert_eq!(json(&a)["seed"], 1);
    assert_eq!(json(&b)["seed"], 2);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn injected_fault_is_caught() {
    let out = run(&["selftest", "--instances", "50", "--inject-fault", "fusion-sign"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failing: Vec<&Value> = v["suites"]["suites"].as_array().unwrap().iter().filter(|s| !s["counterexample"].is_null()).collect();
    assert!(!failing.is_empty());
    assert!(failing[0]["counterexample"]["dims"].is_array());
}

#[test]
fn shipped_fixtures_are_current() {
    let dir = scratch("fixtures");
    let out = run(&["--write-fixtures", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut names: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 14);
    for name in names {
        let fresh = std::fs::read_to_string(dir.join(&name)).unwrap();
        let shipped = std::fs::read_to_string(fixtures_dir().join(&name)).unwrap_or_default();
        assert_eq!(fresh, shipped, "{name:?} is stale; regenerate with --write-fixtures crates/cli/fixtures");
    }
}

#[test]
fn list_fixtures() {
    let v = json(&run(&["--list-fixtures"]));
    assert_eq!(v.as_array().unwrap().len(), 14);
}
