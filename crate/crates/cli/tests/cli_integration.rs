//! Subprocess integration tests: run the real binary and verify exit
//! codes, report structure, and byte-level determinism.

use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_septool"))
        .args(args)
        .output()
        .expect("failed to run septool");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stdout).to_string(),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

fn fields_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fields")
        .canonicalize()
        .expect("fields directory")
}

fn field(name: &str) -> String {
    fields_dir().join(name).to_string_lossy().to_string()
}

fn write_temp(name: &str, content: &str) -> String {
    let path = std::env::temp_dir().join(name);
    std::fs::write(&path, content).expect("write temp doc");
    path.to_string_lossy().to_string()
}

#[test]
fn help_lists_subcommands() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in [
        "reduce",
        "separatrix",
        "index",
        "check-integral",
        "diverge",
        "paper-example",
    ] {
        assert!(stdout.contains(sub), "missing {sub} in help");
    }
}

#[test]
fn index_center_is_one() {
    let (code, stdout, _) = run(&["index", &field("center.field")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("index 1"), "stdout: {stdout}");
    assert!(stdout.contains("certified: true"));
}

#[test]
fn index_saddle_fixed_radius() {
    let (code, stdout, _) = run(&["index", &field("saddle.field"), "--radius", "1/2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("index -1"), "stdout: {stdout}");
}

#[test]
fn separatrix_quartic_unique() {
    let (code, stdout, _) = run(&["separatrix", &field("quartic_x2.field")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("1 found"), "stdout: {stdout}");
    assert!(stdout.contains("Unique"));
    assert!(stdout.contains("invariant = true"));
}

#[test]
fn separatrix_three_dimensional_document() {
    let (code, stdout, _) = run(&["separatrix", &field("unfolding_x2.field")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Unique"), "stdout: {stdout}");
    assert!(stdout.contains("z = 0"), "stdout: {stdout}");
}

#[test]
fn check_integral_on_both_documents() {
    let (code, stdout, _) = run(&["check-integral", &field("center.field")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("is a first integral"));
    let (code, stdout, _) = run(&["check-integral", &field("unfolding_x2.field")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("is a first integral"));
}

#[test]
fn reduce_reports_saddle_node_leaf() {
    let (code, stdout, _) = run(&["reduce", &field("quartic_x2.field")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("SaddleNode: 1"), "stdout: {stdout}");
}

#[test]
fn diverge_agreement_and_csv() {
    let csv = std::env::temp_dir().join("septool_diverge.csv");
    let (code, stdout, _) = run(&[
        "diverge",
        "--alpha",
        "0,0,1",
        "--delta",
        "1/10",
        "--trunc",
        "40",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("AgreeDivergent"), "stdout: {stdout}");
    assert!(stdout.contains("limit 1/2"));
    let dumped = std::fs::read_to_string(&csv).unwrap();
    assert!(dumped.starts_with("n,ln_abs_c_n"));
    assert!(dumped.lines().count() > 30);
}

#[test]
fn diverge_reads_alpha_from_document() {
    let (code, stdout, _) = run(&["diverge", &field("saddle_node_z2.field"), "--trunc", "30"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("AgreeDivergent"), "stdout: {stdout}");
}

#[test]
fn showcase_all_checks_pass() {
    let (code, stdout, _) = run(&["paper-example"]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("11 of 11 checks passed"),
        "stdout: {stdout}"
    );
}

#[test]
fn exit_2_on_syntax_error() {
    let doc = write_temp("septool_bad_syntax.field", "vars x y\nfield dx = y +\n");
    let (code, _, stderr) = run(&["separatrix", &doc]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn exit_2_on_inexact_division_in_document() {
    let doc = write_temp("septool_bad_div.field", "vars x y\nfield dx = x / y\n");
    let (code, _, stderr) = run(&["separatrix", &doc]);
    assert_eq!(code, 2);
    assert!(stderr.contains("not divisible"), "stderr: {stderr}");
    assert!(stderr.contains("x / y"), "stderr: {stderr}");
}

#[test]
fn exit_3_on_hypothesis_violation() {
    // alpha with alpha'(0) != 0 violates the admissibility hypothesis
    let (code, _, stderr) = run(&["diverge", "--alpha", "0,1", "--trunc", "20"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("hypothesis"), "stderr: {stderr}");

    // a nonsingular field cannot be reduced
    let doc = write_temp(
        "septool_nonsingular.field",
        "vars x y\nfield dx = 1 + x\nfield dy = y\n",
    );
    let (code, _, stderr) = run(&["reduce", &doc]);
    assert_eq!(code, 3);
    assert!(stderr.contains("singular"), "stderr: {stderr}");
}

#[test]
fn exit_4_on_certification_failure() {
    // both components vanish on the chosen circle
    let doc = write_temp(
        "septool_ring_zero.field",
        "vars x y\nfield dx = x^2 + y^2 - 1\nfield dy = x^2 + y^2 - 1\n",
    );
    let (code, _, stderr) = run(&["index", &doc, "--radius", "1"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("certification"), "stderr: {stderr}");
}

#[test]
fn json_reports_are_deterministic_and_tagged() {
    let args = ["paper-example", "--trunc", "30", "--json", "-"];
    let (code1, out1, _) = run(&args);
    let (code2, out2, _) = run(&args);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(out1, out2, "reports must be byte-identical");

    let parsed: serde_json::Value = serde_json::from_str(&out1).unwrap();
    assert_eq!(parsed["tool"], "septool");
    assert_eq!(parsed["schema"], "septool.report/v1");
    assert_eq!(parsed["command"], "paper-example");
    assert!(parsed["input_digest"].as_str().unwrap().len() == 64);
    assert_eq!(parsed["output"]["all_pass"], true);
    // floats are tagged approximate; exact values are p/q strings
    let fitted = &parsed["output"]["diverge"]["gevrey"]["fitted_order"];
    assert!(fitted["approx"].is_string(), "tagged float: {fitted}");
    let sums = &parsed["output"]["diverge"]["elizarov"]["partial_sums"];
    assert!(sums[0][1].is_string());
}

#[test]
fn json_file_output_for_reduce() {
    let path = std::env::temp_dir().join("septool_reduce.json");
    let (code, stdout, _) = run(&[
        "reduce",
        &field("quartic_x2.field"),
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("report written"));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(parsed["command"], "reduce");
    // rationals in the tree serialize as strings
    let tree = &parsed["output"]["tree"];
    assert!(tree["root"]["class"]["linear"]["trace"].is_string());
    // the canonical rendering parses back (round-trip capability)
    assert!(parsed["output"]["canonical_field"]
        .as_str()
        .unwrap()
        .contains("field dx"));
    // arrivals record chart, translation and divisor multiplicity
    let child = &tree["root"]["children"][0];
    assert_eq!(child["arrival"]["chart"], "x-directional");
    assert_eq!(child["arrival"]["multiplicity"], 1);
    assert!(child["arrival"]["translation"].is_array());
}

#[test]
fn index_csv_dump() {
    let path = std::env::temp_dir().join("septool_circle.csv");
    let (code, _, _) = run(&[
        "index",
        &field("center.field"),
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let dumped = std::fs::read_to_string(&path).unwrap();
    assert!(dumped.starts_with("theta,x,y,vx,vy"));
    assert_eq!(dumped.lines().count(), 361);
}
