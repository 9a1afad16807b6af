//! End-to-end tests of the `fiberprod` binary: subcommands, formats, stdin
//! and the documented exit codes (0 ok, 1 parse/validation, 2 numerical,
//! 3 corpus mismatch).

use std::io::Write;
use std::process::{Command, Output, Stdio};

use fiberprod_cli::corpus::corpus_file;
use fiberprod_cli::report::parse_json;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fiberprod"))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, content).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn cover_validate_and_genus() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = write_temp(&dir, "z3.cover", corpus_file("z3.cover").unwrap());
    let output = bin().args(["cover", "validate", &z3]).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let output = bin().args(["cover", "genus", &z3]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output).trim(), "1");
}

#[test]
fn invalid_cover_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(
        &dir,
        "bad.cover",
        "version 1\nbase_genus 0\ndegree 3\nbranch 0 (1 2 3)\nbranch 1 (1 2 3)\nbranch inf (1 3 2)\n",
    );
    let output = bin().args(["cover", "validate", &bad]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("residual"), "diagnostic names the residual: {stderr}");
}

#[test]
fn cover_accepts_stdin() {
    let mut child = bin()
        .args(["cover", "genus", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(corpus_file("klein.cover").unwrap().as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout(&output).trim(), "0");
}

#[test]
fn fiber_decompose_text_and_structured() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = write_temp(&dir, "z3.cover", corpus_file("z3.cover").unwrap());
    let klein = write_temp(&dir, "klein.cover", corpus_file("klein.cover").unwrap());
    let output = bin()
        .args(["fiber", "decompose", &z3, &klein])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("components: 1"));
    assert!(text.contains("genus: 4"));

    let report_path = dir.path().join("report.json");
    let output = bin()
        .args([
            "fiber",
            "decompose",
            &z3,
            &klein,
            "--format",
            "structured",
            "--isomorphism",
            "--jacobian",
            "--report",
            report_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let json = std::fs::read_to_string(&report_path).unwrap();
    let report = parse_json(&json).unwrap();
    assert_eq!(report.components.len(), 1);
    assert_eq!(report.components[0].genus, 4);
    assert!(report.jacobian.is_some());

    // Reports are byte-identical across runs.
    let again = bin()
        .args(["fiber", "decompose", &z3, &klein, "--format", "structured"])
        .output()
        .unwrap();
    let direct = bin()
        .args(["fiber", "decompose", &z3, &klein, "--format", "structured"])
        .output()
        .unwrap();
    assert_eq!(stdout(&again), stdout(&direct));
}

#[test]
fn fiber_criteria_prints_conditions() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = write_temp(&dir, "c6.cover", corpus_file("cyclic6.cover").unwrap());
    let c4 = write_temp(&dir, "c4.cover", corpus_file("cyclic4.cover").unwrap());
    let output = bin().args(["fiber", "criteria", &c6, &c4]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("cond1 (coprime degrees): false"));
    assert!(text.contains("actual components: 2"));
}

#[test]
fn dessin_product_lists_components() {
    let dir = tempfile::tempdir().unwrap();
    let z7 = write_temp(&dir, "z7.cover", corpus_file("z7_1_2_4.cover").unwrap());
    let z3 = write_temp(&dir, "z3.cover", corpus_file("z3.cover").unwrap());
    let output = bin().args(["dessin", "product", &z7, &z3]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("components: 1"));
    assert!(text.contains("valence (21; 21; 21)"));
    assert!(text.contains("genus 10"));
}

#[test]
fn map_monodromy_expression_to_cover_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("beta1.cover");
    let output = bin()
        .args(["map", "monodromy", "4z^3(1-z^3)", "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    // The emitted file is a valid cover of genus 0.
    let check = bin()
        .args(["cover", "genus", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check).trim(), "0");
}

#[test]
fn map_monodromy_reads_map_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let map_path = write_temp(&dir, "f.map", corpus_file("deg2poly.map").unwrap());
    let from_file = bin().args(["map", "monodromy", &map_path]).output().unwrap();
    assert_eq!(from_file.status.code(), Some(0));

    let mut child = bin()
        .args(["map", "monodromy", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"4z(1-z)")
        .unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(from_stdin.status.code(), Some(0));
    assert_eq!(stdout(&from_file), stdout(&from_stdin));
}

#[test]
fn unresolvable_critical_values_exit_two() {
    // z^3 - 3z/100000000 has two distinct critical values about 2e-12
    // apart: below the working resolution, a numerical failure.
    let output = bin()
        .args(["map", "monodromy", "z^3 - 3z/100000000"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn malformed_expression_exits_one() {
    let output = bin().args(["map", "monodromy", "4z^3(1-z^3"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn corpus_run_is_green() {
    let output = bin().args(["corpus", "run"]).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "{}", stdout(&output));
    assert!(stdout(&output).contains("0 failed"));
}
