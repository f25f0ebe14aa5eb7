use std::path::PathBuf;
use std::process::Command;

use char2forms::eval::run_session_text;
use char2forms::examples::run_example;
use char2forms::session::{parse_session, ParseError};
use char2forms::Options;

fn session_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn fixture() -> String {
    std::fs::read_to_string(session_path("sessions/ex3_2.session")).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_char2forms"))
}

#[test]
fn one_field_declaration() {
    let s = parse_session("field F = rational(x,y,z)").unwrap();
    assert_eq!(s.statements.len(), 1);
    assert_eq!(s.count_fields(), 1);
}

#[test]
fn fixture_shape() {
    let s = parse_session(&fixture()).unwrap();
    assert_eq!(s.count_fields(), 2);
    assert_eq!(s.count_exts(), 1);
    assert_eq!(s.count_forms(), 1);
    assert_eq!(s.checks().count(), 3);
}

#[test]
fn undeclared_extension() {
    let text = "field F = rational(x,y,z)\nform pi = bpf<x,y> over F\ncheck anisotropic pi over M\n";
    assert!(matches!(parse_session(text), Err(ParseError::UndeclaredName { ref name, .. }) if name == "M"));
}

#[test]
fn pretty_print_roundtrip() {
    let texts = [
        fixture(),
        std::fs::read_to_string(session_path("tests/fixtures/mismatch.session")).unwrap(),
        "field F = rational(x,y,z)\n\
         ext E = F adjoin root(4, z), chi = root(2, x*root(4,z)^2 + y)\n\
         form q = tensor(bpf<x>, qpf<<y; 1/x]]) over F\n\
         check degree E = 8\n"
            .to_string(),
    ];
    for t in &texts {
        let s = parse_session(t).unwrap();
        let printed = s.to_string();
        assert_eq!(parse_session(&printed).unwrap(), s, "{printed}");
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = Options { seed: 7, ..Options::default() };
    let a = run_session_text("ex3_2", &fixture(), &opts).unwrap().to_canonical_json();
    let b = run_session_text("ex3_2", &fixture(), &opts).unwrap().to_canonical_json();
    assert_eq!(a, b);
    let a = run_example("ex4_6", &opts).unwrap().to_canonical_json();
    let b = run_example("ex4_6", &opts).unwrap().to_canonical_json();
    assert_eq!(a, b);
}

#[test]
fn json_to_stdout_parses() {
    let out = bin().args(["run", "--seed", "3", "--json", "-"]).arg(session_path("sessions/ex3_2.session")).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checks"].as_array().map(Vec::len), Some(3));
    let again = bin().args(["run", "--seed", "3", "--json", "-"]).arg(session_path("sessions/ex3_2.session")).output().unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn exit_codes() {
    let ok = bin().arg("run").arg(session_path("sessions/ex3_2.session")).output().unwrap().status;
    assert_eq!(ok.code(), Some(0));
    let mismatch = bin().arg("run").arg(session_path("tests/fixtures/mismatch.session")).output().unwrap().status;
    assert_eq!(mismatch.code(), Some(1));
    let missing = bin().args(["run", "no/such/file.session"]).output().unwrap().status;
    assert_eq!(missing.code(), Some(2));
    let unknown = bin().args(["example", "ex9_9"]).output().unwrap().status;
    assert_eq!(unknown.code(), Some(2));
    let bad_flag = bin().args(["run", "--seed", "many"]).output().unwrap().status;
    assert_eq!(bad_flag.code(), Some(2));
}
