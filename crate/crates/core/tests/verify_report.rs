//! The verification pipeline on the frozen degree-10 relations.

use syzcert::verify::{self, golden, Context, RelationSource, Status, VerificationReport, VerifyConfig};

fn frozen_context() -> Context {
    Context::new(VerifyConfig { relation_source: RelationSource::Golden, ..VerifyConfig::default() })
}

const FAST: [&str; 6] = ["group", "generic-finiteness", "hessian-ranks", "reducedness-witness", "section-supports", "points"];

#[test]
fn records_follow_registry_order() {
    let ctx = frozen_context();
    let report = verify::run(&ctx, &["section-supports", "group", "group"], &golden::builtin()).unwrap();
    let ids: Vec<&str> = report.records.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["group", "section-supports"]);
    assert!(report.all_pass());
}

#[test]
fn machine_report_round_trips() {
    let ctx = frozen_context();
    let report = verify::run(&ctx, &FAST, &golden::builtin()).unwrap();
    let back = VerificationReport::from_machine(&report.to_machine()).unwrap();
    assert_eq!(back, report);
    assert!(VerificationReport::from_machine("{\"format\": \"other\", \"records\": []}").is_err());
}

#[test]
fn body_is_identical_across_runs_and_thread_counts() {
    let one = syzcert::par::with_threads(1, || verify::run(&frozen_context(), &FAST, &golden::builtin()).unwrap());
    let four = syzcert::par::with_threads(4, || verify::run(&frozen_context(), &FAST, &golden::builtin()).unwrap());
    assert_eq!(one.body(), four.body());
    assert_ne!(one.body(), "");
}

#[test]
fn decic_scalars_match_frozen_values() {
    let ctx = frozen_context();
    let report = verify::run(&ctx, &["section-supports"], &golden::builtin()).unwrap();
    let rec = report.record("section-supports").unwrap();
    assert_eq!(rec.status, Status::Pass);
    assert_eq!(rec.value("f / (H3*F0)^2 at u2 = u3").unwrap(), "1/16");
    assert_eq!(rec.value("f / (H0^2*G1^2*u2*u3) mod Q0").unwrap(), "4");
}

#[test]
fn golden_mismatch_fails_the_check() {
    let ctx = frozen_context();
    let mut g = golden::builtin();
    g.entry("section-supports".into()).or_default().insert("f / (Q0*G0)^2 at u0 = 0".into(), "2".into());
    let report = verify::run(&ctx, &["section-supports"], &g).unwrap();
    let rec = report.record("section-supports").unwrap();
    assert_eq!(rec.status, Status::Fail);
    assert!(rec.notes.iter().any(|n| n.contains("golden mismatch")));
}

#[test]
fn golden_update_is_idempotent() {
    let ctx = frozen_context();
    let report = verify::run(&ctx, &FAST, &golden::builtin()).unwrap();
    let mut g = golden::builtin();
    golden::update(&mut g, &report);
    assert_eq!(g, golden::builtin());
    let text = golden::render(&g);
    assert_eq!(golden::parse(&text).unwrap(), g);
}

#[test]
fn relation_sweep_below_seven_finds_nothing() {
    let ctx = Context::new(VerifyConfig { max_degree: 6, ..VerifyConfig::default() });
    let report = verify::run(&ctx, &["relations"], &golden::builtin()).unwrap();
    let rec = report.record("relations").unwrap();
    assert_eq!(rec.status, Status::Pass, "{:?}", rec.notes);
    assert_eq!(rec.value("dimensions for n = 1..6").unwrap(), "[0,0,0,0,0,0]");
}

#[test]
fn unknown_ids_are_rejected() {
    let err = verify::run(&frozen_context(), &["group", "bogus"], &golden::builtin()).unwrap_err();
    assert_eq!(err.id, "bogus");
}
