use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn morita(workspace: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morita"))
        .arg("--workspace")
        .arg(workspace)
        .args(args)
        .output()
        .expect("run morita")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn item<'a>(report: &'a Value, id: &str) -> Option<&'a Value> {
    report["items"].as_array()?.iter().find(|i| i["id"] == id)
}

#[test]
fn minimal_workspace_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    std::fs::write(&ws, r#"{"field": "Q"}"#).unwrap();
    let o = morita(&ws, &["--format", "json", "report"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o), serde_json::json!({}));
}

#[test]
fn blowup_fixture_checks_and_is_equivalent() {
    let ws = fixture("blowup_z2.json");
    assert_eq!(code(&morita(&ws, &["check", "A"])), 0);
    assert_eq!(code(&morita(&ws, &["check", "P"])), 0);
    let o = morita(&ws, &["--format", "json", "morita", "P"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["equivalent"], true);
    assert!(v["certificate"]["lambda_inverse"].is_array());
    assert_eq!(v["certificate"]["strongness"]["map"].as_array().unwrap().len(), 32);
}

#[test]
fn broken_counit_fails_multiplicativity() {
    let o = morita(&fixture("blowup_z2_broken_epsilon.json"), &["--format", "json", "check", "A"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(item(&r, "bgd.epsilon_multiplicative").unwrap()["pass"], false);
}

#[test]
fn dual_numbers_fail_at_projectivity() {
    let o = morita(&fixture("azumaya_dual.json"), &["--format", "json", "morita", "P"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["first_failure"], "morita.projective");
}

#[test]
fn matrix_azumaya_is_equivalent_and_composes() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    std::fs::copy(fixture("azumaya_mat2.json"), &ws).unwrap();
    assert_eq!(code(&morita(&ws, &["morita", "P"])), 0);
    assert_eq!(code(&morita(&ws, &["compose", "P", "Q", "--name", "PQ"])), 0);
    let o = morita(&ws, &["--format", "json", "check", "PQ"]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&morita(&ws, &["endo", "P"])), 0);
}

#[test]
fn unknown_names_and_bad_input_exit_two() {
    let ws = fixture("blowup_z2.json");
    let o = morita(&ws, &["check", "nothing"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nothing"));
    assert_eq!(code(&morita(&fixture("missing.json"), &["check", "A"])), 2);
    assert_eq!(code(&morita(&ws, &["--field", "GF:7", "check", "A"])), 2);
    assert_eq!(code(&morita(&ws, &["frobnicate"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&morita(&bad, &["report"])), 2);
    std::fs::write(
        &bad,
        r#"{"field": "Q", "algebras": {"k": {"ground": {}}},
            "bimodules": {"M": {"left": "k", "right": "Ghost", "dim": 0, "left_act": [], "right_act": []}}}"#,
    )
    .unwrap();
    let o = morita(&bad, &["report"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Ghost"));
}

#[test]
fn build_appends_objects() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    let o = morita(&ws, &["--format", "json", "build", "sweedler", "--algebra", "Mat2Q"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["added"], serde_json::json!(["E"]));
    assert_eq!(code(&morita(&ws, &["check", "E"])), 0);

    assert_eq!(code(&morita(&ws, &["build", "--prefix", "bl_", "blowup", "--bialgebra", "QZ2", "--n", "2"])), 0);
    assert_eq!(code(&morita(&ws, &["check", "bl_A"])), 0);
    assert_eq!(code(&morita(&ws, &["build", "--prefix", "tw_", "twist", "--group", "Z2xZ2", "--bichar", "ad"])), 0);
    for name in ["tw_J", "tw_Btw", "tw_P"] {
        assert_eq!(code(&morita(&ws, &["check", name])), 0, "{name}");
    }
    assert_eq!(code(&morita(&ws, &["morita", "tw_P"])), 0);
    // names are not silently overwritten
    assert_eq!(code(&morita(&ws, &["build", "sweedler", "--algebra", "Mat2Q"])), 2);
    assert_eq!(code(&morita(&ws, &["build", "blowup", "--bialgebra", "Nope", "--n", "2"])), 2);
}

#[test]
fn base_change_from_azumaya_cells() {
    let dir = tempfile::tempdir().unwrap();
    let ws = dir.path().join("ws.json");
    std::fs::copy(fixture("azumaya_mat2.json"), &ws).unwrap();
    let o = morita(&ws, &["build", "--prefix", "bc_", "basechange", "--p", "P", "--q", "Q", "--b", "QZ2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&morita(&ws, &["check", "bc_A"])), 0);
    assert_eq!(code(&morita(&ws, &["morita", "bc_X"])), 0);
}

#[test]
fn reports_are_byte_identical() {
    let ws = fixture("blowup_z2.json");
    let a = morita(&ws, &["--format", "json", "report"]);
    let b = morita(&ws, &["--format", "json", "report"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let a = morita(&ws, &["--format", "json", "morita", "P"]);
    let b = morita(&ws, &["--format", "json", "morita", "P"]);
    assert_eq!(a.stdout, b.stdout);
}
