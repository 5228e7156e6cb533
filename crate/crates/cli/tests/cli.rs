//! End-to-end tests of the `majenc` binary.
//!
//! Golden files live in `tests/golden`; set `MAJENC_BLESS=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use majenc_core::format::{parse_circuit, CircuitRole};

fn majenc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majenc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn check_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("MAJENC_BLESS").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden file {name} differs");
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code_of(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

/// Runs `synth` writing the document into `dir`; returns (document path, report).
fn synth_to(dir: &Path, name: &str, args: &[&str]) -> (PathBuf, String) {
    let path = dir.join(name);
    let mut all: Vec<&str> = vec!["synth"];
    all.extend_from_slice(args);
    let p = path.display().to_string();
    all.extend_from_slice(&["-o", &p]);
    let out = majenc(&all);
    assert_eq!(code_of(&out), 0, "{}", stderr(&out));
    (path, stdout(&out))
}

#[test]
fn kitaev_ancilla_free_is_braid2_only() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, report) = synth_to(dir.path(), "k.toml", &["--builtin", "kitaev:4", "--ancilla-free"]);
    let text = fs::read_to_string(&doc).unwrap();
    check_golden("kitaev4_ancilla_free.toml", &text);
    let parsed = parse_circuit(&text).unwrap();
    assert_eq!(parsed.role, CircuitRole::Encoder);
    assert_eq!(parsed.circuit.gate_counts().braid4, 0);
    assert!(report.contains("braid4=0"));
}

#[test]
fn kitaev_with_ancilla_golden() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, _) = synth_to(dir.path(), "k.toml", &["--builtin", "kitaev:4"]);
    check_golden("kitaev4_encoder.toml", &fs::read_to_string(doc).unwrap());
}

#[test]
fn shortest_code_report_and_document() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, report) = synth_to(dir.path(), "s.toml", &["--builtin", "shortest"]);
    check_golden("shortest_encoder.toml", &fs::read_to_string(&doc).unwrap());
    let report = report.replace(&doc.display().to_string(), "OUTPUT");
    check_golden("shortest_report.txt", &report);
    assert!(report.contains("total_modes: 14\n"));
    assert!(report.contains("ancilla_modes: [0, 1]\n"));
}

#[test]
fn synth_is_deterministic() {
    let a = majenc(&["synth", "--builtin", "shortest", "-o", "-"]);
    let b = majenc(&["synth", "--builtin", "shortest", "-o", "-"]);
    assert_eq!(code_of(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn dash_output_sends_document_to_stdout_and_report_to_stderr() {
    let out = majenc(&["synth", "--builtin", "kitaev:3", "--decoder", "-o", "-"]);
    assert_eq!(code_of(&out), 0);
    let doc = parse_circuit(&stdout(&out)).unwrap();
    assert_eq!(doc.role, CircuitRole::Decoder);
    assert!(stderr(&out).contains("document: decoder -> stdout"));
}

#[test]
fn parity_code_obstruction_exit_code() {
    let out = majenc(&["synth", &data("parity4.toml"), "--ancilla-free"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr(&out).contains("total parity"), "{}", stderr(&out));
    let out = majenc(&["synth", &data("parity4.toml")]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout(&out).contains("ancilla: not reset"));
}

#[test]
fn invalid_inputs_exit_one() {
    let out = majenc(&["synth", &data("odd_weight.toml")]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr(&out).contains("odd weight"));
    assert_eq!(code_of(&majenc(&["synth", "--builtin", "kitaev:1"])), 1);
    assert_eq!(code_of(&majenc(&["synth", "--builtin", "nope"])), 1);
    assert_eq!(code_of(&majenc(&["synth"])), 1);
    assert_eq!(code_of(&majenc(&["--help"])), 0);
}

#[test]
fn missing_file_exits_three() {
    let out = majenc(&["synth", "/nonexistent/code.toml"]);
    assert_eq!(code_of(&out), 3);
    let out = majenc(&["diagram", "/nonexistent/circuit.toml"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn verify_round_trip_both_roles() {
    let dir = tempfile::tempdir().unwrap();
    for (name, extra) in [("enc.toml", None), ("dec.toml", Some("--decoder"))] {
        let mut args = vec![data("ten_mode.toml")];
        args.extend(extra.map(String::from));
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (doc, _) = synth_to(dir.path(), name, &args);
        let out = majenc(&["verify", &data("ten_mode.toml"), &doc.display().to_string(), "--oracle"]);
        assert_eq!(code_of(&out), 0, "{}{}", stdout(&out), stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("decoded-form: ok"));
        assert!(text.contains("symplectic: ok"));
        assert!(text.contains("oracle: ok"));
    }
}

#[test]
fn verify_detects_deleted_gate() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, _) = synth_to(dir.path(), "s.toml", &["--builtin", "shortest", "--decoder"]);
    let text = fs::read_to_string(&doc).unwrap();
    let first = text.find("[[gates]]").unwrap();
    let second = first + 1 + text[first + 1..].find("[[gates]]").unwrap();
    let broken = format!("{}{}", &text[..first], &text[second..]);
    let broken_path = dir.path().join("broken.toml");
    fs::write(&broken_path, broken).unwrap();

    let code = dir.path().join("shortest.toml");
    fs::write(&code, majenc_core::codes::serialize_code(&majenc_core::shortest_code())).unwrap();
    let out = majenc(&[
        "verify",
        &code.display().to_string(),
        &broken_path.display().to_string(),
    ]);
    assert_eq!(code_of(&out), 4);
    assert!(stderr(&out).contains("decoded-form check failed"), "{}", stderr(&out));
}

#[test]
fn verify_oracle_on_shortest_is_fast() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, _) = synth_to(dir.path(), "s.toml", &["--builtin", "shortest"]);
    let code = dir.path().join("shortest.toml");
    fs::write(&code, majenc_core::codes::serialize_code(&majenc_core::shortest_code())).unwrap();
    let start = Instant::now();
    let out = majenc(&[
        "verify",
        &code.display().to_string(),
        &doc.display().to_string(),
        "--oracle",
    ]);
    assert_eq!(code_of(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("dimension 128"));
    assert!(start.elapsed() < Duration::from_secs(30));
}

#[test]
fn verify_oracle_refuses_large_circuits() {
    let dir = tempfile::tempdir().unwrap();
    let (doc, _) = synth_to(dir.path(), "k.toml", &["--builtin", "kitaev:8"]);
    let code = dir.path().join("k.toml.code");
    fs::write(
        &code,
        majenc_core::codes::serialize_code(&majenc_core::kitaev_chain(8).unwrap()),
    )
    .unwrap();
    let out = majenc(&["verify", &code.display().to_string(), &doc.display().to_string()]);
    assert_eq!(code_of(&out), 0);
    let out = majenc(&[
        "verify",
        &code.display().to_string(),
        &doc.display().to_string(),
        "--oracle",
    ]);
    assert_eq!(code_of(&out), 4);
    assert!(stderr(&out).contains("oracle check failed"));
}

#[test]
fn diagram_golden_and_trivial_cases() {
    let doc = golden_path("kitaev4_ancilla_free.toml").display().to_string();
    let out = majenc(&["diagram", &doc]);
    assert_eq!(code_of(&out), 0);
    check_golden("kitaev4_ancilla_free.diagram", &stdout(&out));
    let doc = golden_path("shortest_encoder.toml").display().to_string();
    check_golden("shortest_encoder.diagram", &stdout(&majenc(&["diagram", &doc])));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.toml");
    fs::write(&empty, "format_version = 1\nrole = \"encoder\"\nn_modes = 2\n").unwrap();
    assert_eq!(
        stdout(&majenc(&["diagram", &empty.display().to_string()])),
        "c0 -\nc1 -\n"
    );

    let single = dir.path().join("single.toml");
    fs::write(
        &single,
        "format_version = 1\nrole = \"encoder\"\nn_modes = 2\n\n[[gates]]\nkind = \"braid2\"\nmodes = [0, 1]\ndirection = 1\n",
    )
    .unwrap();
    assert_eq!(
        stdout(&majenc(&["diagram", &single.display().to_string()])),
        "c0 -X-\nc1 -X-\n"
    );
    let tex = stdout(&majenc(&["diagram", &single.display().to_string(), "--latex"]));
    assert!(tex.starts_with("% layer 0: B2 +(0,1)\n\\begin{quantikz}"));
}

#[test]
fn malformed_circuit_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "format_version = 1\nrole = \"sideways\"\nn_modes = 2\n").unwrap();
    assert_eq!(code_of(&majenc(&["diagram", &bad.display().to_string()])), 1);
}
