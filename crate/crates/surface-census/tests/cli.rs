//! End-to-end checks of the command-line interface and its exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_surface-census"))
}

fn stdout_of(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

#[test]
fn q_prints_the_reduced_fraction() {
    assert_eq!(stdout_of(&["q", "(2,3,7)"]).trim(), "1/84");
    assert_eq!(stdout_of(&["q", "(2,6,6)"]).trim(), "1/12");
}

#[test]
fn genus_and_measure() {
    assert_eq!(stdout_of(&["genus", "(2,5,10)", "110"]).trim(), "12");
    assert_eq!(stdout_of(&["measure", "(2,3,7)"]).trim(), "1/42");
}

#[test]
fn ngenus_formats_the_headline_value() {
    let out = stdout_of(&["ngenus", "19"]);
    assert!(out.starts_with("N(20) = 228"), "got: {}", out);
}

#[test]
fn family_verify_reports_passes() {
    let out = stdout_of(&["family", "ii", "11", "--verify"]);
    assert!(out.contains("4 orbits"), "got: {}", out);
    assert!(!out.contains("FAIL"), "got: {}", out);
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["sigma", "--bogus-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mathematical_failures_exit_1() {
    // 15 is not prime.
    let out = bin().args(["ngenus", "15"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Congruence violation: family (i) needs p = 1 mod 3.
    let out = bin().args(["family", "i", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_output_is_byte_stable() {
    let a = stdout_of(&["appendix", "--format", "json"]);
    let b = stdout_of(&["appendix", "--format", "json"]);
    assert_eq!(a, b);
    let a = stdout_of(&["sigma", "--lambda", "8", "--format", "json"]);
    let b = stdout_of(&["sigma", "--lambda", "8", "--format", "json"]);
    assert_eq!(a, b);
}

#[test]
fn csv_is_emitted_for_tabular_commands() {
    let out = stdout_of(&["appendix", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("signature,s_over_r"));
    assert!(out.lines().any(|l| l == "\"(2,5,7)\",140/11" || l == "(2,5,7),140/11"));
}

#[test]
fn order_and_abelian_read_presentation_files() {
    let dir = std::env::temp_dir();
    let path = dir.join("surface-census-cli-test-sd8.txt");
    std::fs::write(&path, "<a, c | a^2, c^8, a^-1 c a c^-3>").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout_of(&["order", p]).trim(), "16");
    assert_eq!(stdout_of(&["abelian", p]).trim(), "[2, 2]");
    std::fs::remove_file(&path).ok();
}

#[test]
fn ske_counts_match_the_worked_example() {
    let out = stdout_of(&["ske", "MC(11,10,2)", "(2,5,10)", "--orbits"]);
    assert!(out.contains("440 tuples"), "got: {}", out);
    assert!(out.contains("4 orbits"), "got: {}", out);
}
