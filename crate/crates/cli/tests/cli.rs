//! The binary end to end: exit codes, report formats, subcommands.

use std::process::{Command, Output};

use syzcert::verify::{Status, VerificationReport};

const SOURCE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/source.txt");
const TARGET: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/target.txt");

fn syzcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzcert")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn machine(out: &Output) -> VerificationReport {
    VerificationReport::from_machine(&String::from_utf8_lossy(&out.stdout)).expect("machine report")
}

#[test]
fn relation_sweep_to_degree_six_passes() {
    let out = syzcert(&["--format", "machine", "verify-paper", "--check", "relations", "--max-degree", "6"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = machine(&out);
    assert_eq!(report.records.len(), 1);
    assert_eq!(report.records[0].value("dimensions for n = 1..6"), Some("[0,0,0,0,0,0]"));
}

#[test]
fn usage_errors_exit_with_two() {
    let out = syzcert(&["rels", "--input", SOURCE, "--names", "U0,U1", "--degree", "0"]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&syzcert(&["frobnicate"])), 2);
    assert_eq!(code(&syzcert(&["--threads", "0", "verify-paper", "--check", "group"])), 2);
    assert_eq!(code(&syzcert(&["--modular-primes", "1", "verify-paper", "--check", "group"])), 2);
    assert_eq!(code(&syzcert(&["verify-paper"])), 2);
    let out = syzcert(&["rels", "--input", "/nonexistent", "--names", "U0", "--degree", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_check_lists_valid_ids() {
    let out = syzcert(&["verify-paper", "--check", "nope"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("unknown check `nope`"));
    assert!(err.contains("section-supports"));
}

#[test]
fn failing_check_exits_with_one() {
    let out = syzcert(&["--format", "machine", "verify-paper", "--check", "points"]);
    assert_eq!(code(&out), 1);
    assert_eq!(machine(&out).records[0].status, Status::Fail);
}

#[test]
fn report_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("syzcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = syzcert(&[
        "--format",
        "machine",
        "--report",
        path.to_str().unwrap(),
        "verify-paper",
        "--frozen-relations",
        "--check",
        "section-supports",
        "--check",
        "group",
    ]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, String::from_utf8_lossy(&out.stdout));
    let report = VerificationReport::from_machine(&written).unwrap();
    let ids: Vec<&str> = report.records.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["group", "section-supports"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn write_golden_merges_derived_values() {
    let dir = std::env::temp_dir().join(format!("syzcert-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("values.json");
    let out = syzcert(&["verify-paper", "--frozen-relations", "--check", "section-supports", "--write-golden", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"f / (H3*F0)^2 at u2 = u3\": \"1/16\""));
    // a tampered value makes the comparison fail
    std::fs::write(&path, text.replace("1/16", "1/8")).unwrap();
    let out = syzcert(&["verify-paper", "--frozen-relations", "--check", "section-supports", "--golden", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rels_finds_no_low_degree_relation() {
    let out = syzcert(&["--format", "machine", "rels", "--input", SOURCE, "--names", "U0,U1,U2,U3,U4,U5", "--degree", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(machine(&out).records[0].value("dimension"), Some("0"));
}

#[test]
fn rels_finds_a_planted_relation() {
    let out = syzcert(&["--format", "machine", "rels", "--input", TARGET, "--names", "P,S,A,B", "--degree", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report = machine(&out);
    // P = A + B
    assert_eq!(report.records[0].value("dimension"), Some("1"));
    assert_eq!(report.records[0].value("relation 0"), Some("v0 - v2 - v3"));
    let out = syzcert(&["rels", "--input", TARGET, "--names", "P,H0", "--degree", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("different degrees"));
}

#[test]
fn membership_certificate_and_refusal() {
    let out = syzcert(&["--format", "machine", "membership", "--input", TARGET, "--target", "Q1", "--ideal", "H0,Q0", "--bound", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(machine(&out).records[0].value("certificate verified"), Some("true"));
    let out = syzcert(&["membership", "--input", TARGET, "--target", "S", "--ideal", "P", "--bound", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn isotypic_and_orbits() {
    let out = syzcert(&[
        "--format", "machine", "isotypic", "--input", SOURCE, "--action", "rho1_g=-1", "--action", "rho1_h=1", "--names", "F2",
    ]);
    assert_eq!(code(&out), 0);
    let rec = machine(&out).records.remove(0);
    assert_eq!(rec.value("dimension"), Some("1"));
    assert_eq!(rec.value("F2 in the eigenspace"), Some("true"));

    let out = syzcert(&["--format", "machine", "orbits", "--input", SOURCE, "--set", "base-points", "--names", "F1"]);
    assert_eq!(code(&out), 0);
    let rec = machine(&out).records.remove(0);
    assert_eq!(rec.value("orbit sizes"), Some("[16,16]"));
    assert_eq!(rec.value("free"), Some("true"));
}

#[test]
fn hessian_of_a_node() {
    let out = syzcert(&["--format", "machine", "hessian", "--input", TARGET, "--target", "S", "--point", "0,0,1,1,1"]);
    assert_eq!(code(&out), 0);
    let rec = machine(&out).records.remove(0);
    assert_eq!(rec.value("gradient vanishes"), Some("true"));
    assert_eq!(rec.value("rank"), Some("2"));
}

#[test]
fn threads_do_not_change_the_body() {
    let a = syzcert(&["--threads", "1", "--format", "machine", "verify-paper", "--check", "group", "--check", "points"]);
    let b = syzcert(&["--threads", "3", "--format", "machine", "verify-paper", "--check", "group", "--check", "points"]);
    assert_eq!(machine(&a).body(), machine(&b).body());
}

#[test]
fn human_format_is_a_table() {
    let out = syzcert(&["verify-paper", "--check", "group"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("check"));
    assert!(text.contains("group"));
    assert!(text.contains("pass"));
}
