use std::path::PathBuf;
use std::process::{Command, Output};

fn semitri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semitri")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn kaplansky_fixture_prints_chain() {
    let o = semitri(&["triangularize", "--input", &fixture("kaplansky.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("triangularizable (mode kaplansky)"), "{s}");
    assert!(s.contains("b3 = "), "{s}");
}

#[test]
fn json_report_carries_witness() {
    let o = semitri(&["triangularize", "--input", &fixture("e12_e21.json"), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "not_triangularizable");
    assert_eq!(v["witness"]["kind"], "NonNilpotentIdealElement");
    assert_eq!(v["witness"]["word"], "g1*g2");
    assert_eq!(v["witness"]["matrix"], serde_json::json!([["1", "0"], ["0", "0"]]));
}

#[test]
fn malformed_input_points_at_token() {
    let o = semitri(&["triangularize", "--input", &fixture("malformed_quaternion.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("\"1+q\""), "{err}");
    assert!(err.contains("generators[0][0][1]"), "{err}");
}

#[test]
fn missing_file_is_input_error() {
    let o = semitri(&["triangularize", "--input", "/nonexistent/family.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_rejects_foreign_chain() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.json");
    std::fs::write(
        &chain,
        r#"{"scalar": "rational", "n": 2, "subspaces": [[], [["0", "1"]], [["1", "0"], ["0", "1"]]]}"#,
    )
    .unwrap();
    let family = dir.path().join("upper.json");
    std::fs::write(&family, r#"{"scalar": "rational", "n": 2, "generators": [[["1", "1"], ["0", "1"]]]}"#).unwrap();
    let o = semitri(&["verify", "--input", family.to_str().unwrap(), "--chain", chain.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn spectrum_lists_each_generator() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("f.json");
    std::fs::write(
        &family,
        r#"{"scalar": "gfp:5", "n": 2, "generators": [[["3", "1"], ["0", "3"]], [["1", "0"], ["0", "2"]]]}"#,
    )
    .unwrap();
    let o = semitri(&["spectrum", "--input", family.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "g1: 3\ng2: none (spectrum {1,2})\n");
}

#[test]
fn incomplete_closure_is_reported_not_failed() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("f.json");
    std::fs::write(&family, r#"{"scalar": "rational", "n": 1, "generators": [[["2"]]]}"#).unwrap();
    let path = family.to_str().unwrap();
    let o = semitri(&["closure", "--input", path, "--closure-bound", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("incomplete"), "{}", stdout(&o));
    let o = semitri(&["triangularize", "--input", path, "--finite", "--closure-bound", "20"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn large_prime_needs_flag() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("f.json");
    std::fs::write(&family, r#"{"scalar": "gfp:1000003", "n": 1, "generators": [[["2"]]]}"#).unwrap();
    let path = family.to_str().unwrap();
    assert_eq!(semitri(&["triangularize", "--input", path]).status.code(), Some(2));
    assert_eq!(semitri(&["triangularize", "--input", path, "--max-prime", "2000000"]).status.code(), Some(0));
}

#[test]
fn random_tn_file_triangularizes() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("tn.json");
    let path = family.to_str().unwrap();
    let o = semitri(&["random", "--kind", "tn", "--n", "3", "--seed", "11", "--ring", "rational", "--output", path]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&family).unwrap();
    assert!(text.contains("\"mode\": \"tn\""), "{text}");
    let o = semitri(&["triangularize", "--input", path]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("triangularizable (mode tn)"));
}

#[test]
fn irreducible_mode_reports_subspace() {
    let dir = tempfile::tempdir().unwrap();
    let family = dir.path().join("f.json");
    std::fs::write(&family, r#"{"scalar": "rational", "n": 2, "generators": [[["1", "0"], ["0", "2"]]]}"#).unwrap();
    let o = semitri(&["triangularize", "--input", family.to_str().unwrap(), "--mode", "irreducible"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("reducible (mode irreducible)"));
}
