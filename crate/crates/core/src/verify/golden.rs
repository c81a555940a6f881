//! Frozen derived values: `check id -> key -> value`, kept as JSON in the
//! repository and compared on every run.

use std::collections::BTreeMap;

use super::report::{Provenance, Status, VerificationReport};

pub type GoldenValues = BTreeMap<String, BTreeMap<String, String>>;

/// Values shipped with the crate.
pub const BUILTIN: &str = include_str!("../../golden/values.json");

/// The degree-10 relations for both `U5` variants, as primitive forms in
/// `u0..u5`.
pub const RELATION_MINUS: &str = include_str!("../../golden/relation10_minus.txt");
pub const RELATION_PLUS: &str = include_str!("../../golden/relation10_plus.txt");

pub fn builtin() -> GoldenValues {
    parse(BUILTIN).expect("built-in golden values parse")
}

pub fn parse(text: &str) -> Result<GoldenValues, serde_json::Error> {
    serde_json::from_str(text)
}

/// Prime lists depend on the seed and are not frozen.
pub fn is_frozen(key: &str) -> bool {
    !key.contains("primes")
}

/// Marks every derived value that disagrees with `golden` and fails its
/// check. Values without a golden entry pass through.
pub fn compare(report: &mut VerificationReport, golden: &GoldenValues) {
    for rec in &mut report.records {
        let Some(frozen) = golden.get(&rec.id) else { continue };
        for v in &rec.values {
            if v.provenance != Provenance::Derived || !is_frozen(&v.key) {
                continue;
            }
            if let Some(expected) = frozen.get(&v.key) {
                if *expected != v.value {
                    rec.status = Status::Fail;
                    rec.notes.push(format!("golden mismatch for {}: frozen {expected}, computed {}", v.key, v.value));
                }
            }
        }
    }
}

/// Merges the derived values of passing and failing checks into `golden`.
/// Skipped checks and errored checks leave their entries untouched.
pub fn update(golden: &mut GoldenValues, report: &VerificationReport) {
    for rec in &report.records {
        if rec.status == Status::Skipped || rec.error.is_some() {
            continue;
        }
        let entry = golden.entry(rec.id.clone()).or_default();
        for v in &rec.values {
            if v.provenance == Provenance::Derived && is_frozen(&v.key) {
                entry.insert(v.key.clone(), v.value.clone());
            }
        }
    }
}

pub fn render(golden: &GoldenValues) -> String {
    let mut out = serde_json::to_string_pretty(golden).expect("golden values serialize");
    out.push('\n');
    out
}
