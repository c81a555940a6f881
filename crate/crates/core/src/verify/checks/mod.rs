//! The closed registry of named checks.

mod decic;
mod relation;
mod source;

use std::fmt::Display;
use std::time::Instant;

use super::context::{Context, RELATION_DEGREE};
use super::golden::{self, GoldenValues};
use super::report::{CheckRecord, Provenance, Status, Value, VerificationReport};
use crate::par;

pub(crate) type CheckResult = Result<(), Box<dyn std::error::Error + Send + Sync>>;

/// Accumulates one check's values; any mismatch fails the check.
pub(crate) struct Rec(pub CheckRecord);

impl Rec {
    /// A claimed value next to the computed one.
    pub fn claim(&mut self, key: impl Into<String>, value: impl Display, expected: impl Display) -> bool {
        let v = Value {
            key: key.into(),
            value: value.to_string(),
            provenance: Provenance::Claimed,
            expected: Some(expected.to_string()),
        };
        let ok = v.matches();
        if !ok {
            self.0.status = Status::Fail;
        }
        self.0.values.push(v);
        ok
    }

    pub fn derived(&mut self, key: impl Into<String>, value: impl Display) {
        self.0.values.push(Value { key: key.into(), value: value.to_string(), provenance: Provenance::Derived, expected: None });
    }

    /// Fails the check with `what` unless `ok`.
    pub fn require(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            self.0.status = Status::Fail;
            self.0.notes.push(what.into());
        }
        ok
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.0.notes.push(text.into());
    }
}

pub(crate) fn list<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// 64-bit FNV-1a of a canonical text, to pin large outputs in reports.
pub(crate) fn fingerprint(text: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

/// What a check needs from the shared context before it runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Needs {
    Nothing,
    /// The degree-10 relation of the selected variant.
    Relation,
    /// Both variants' relations.
    BothRelations,
}

pub struct CheckInfo {
    pub id: &'static str,
    pub summary: &'static str,
    /// Optional checks only run when selected explicitly or with
    /// `include_optional`.
    pub optional: bool,
    needs: Needs,
    run: fn(&Context, &mut Rec) -> CheckResult,
}

pub const REGISTRY: [CheckInfo; 12] = [
    CheckInfo { id: "group", summary: "orders, sign relation, homomorphism and character", optional: false, needs: Needs::Nothing, run: source::group },
    CheckInfo { id: "isotypic", summary: "invariant slices and the span of U0..U5", optional: false, needs: Needs::Nothing, run: source::isotypic },
    CheckInfo { id: "points", summary: "fixed points, base points and their orbits", optional: false, needs: Needs::Nothing, run: source::points },
    CheckInfo { id: "relations", summary: "relation dimensions among U0..U5 by degree", optional: false, needs: Needs::Nothing, run: relation::relations },
    CheckInfo { id: "f-consistency", summary: "the decic against the displayed expression", optional: false, needs: Needs::BothRelations, run: relation::f_consistency },
    CheckInfo { id: "generic-finiteness", summary: "rank of the differential of the map", optional: false, needs: Needs::Nothing, run: source::jacobian },
    CheckInfo { id: "singular-containment", summary: "membership certificates for the seven surfaces", optional: false, needs: Needs::Relation, run: decic::singular },
    CheckInfo { id: "hessian-ranks", summary: "Hessian ranks at the surface points", optional: false, needs: Needs::Relation, run: decic::hessians },
    CheckInfo { id: "reducedness-witness", summary: "a smooth point of the decic", optional: false, needs: Needs::Relation, run: decic::smooth_point },
    CheckInfo { id: "section-supports", summary: "restrictions of the decic to hyperplanes", optional: false, needs: Needs::Relation, run: decic::sections },
    CheckInfo { id: "puredim-witness", summary: "F1 on the components of {U4 = Uj = 0}", optional: false, needs: Needs::Nothing, run: source::components },
    CheckInfo { id: "unique-decic", summary: "decics singular along the seven surfaces", optional: true, needs: Needs::Relation, run: decic::uniqueness },
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check `{id}`; valid checks: {}", valid.join(", "))]
pub struct UnknownCheck {
    pub id: String,
    pub valid: Vec<&'static str>,
}

pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

pub fn lookup(id: &str) -> Result<&'static CheckInfo, UnknownCheck> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| UnknownCheck { id: id.to_string(), valid: check_ids() })
}

/// Ids selected by `--all`.
pub fn default_ids(include_optional: bool) -> Vec<&'static str> {
    REGISTRY.iter().filter(|c| include_optional || !c.optional).map(|c| c.id).collect()
}

fn run_one(info: &CheckInfo, ctx: &Context) -> (CheckRecord, u64) {
    let start = Instant::now();
    let mut rec = Rec(CheckRecord::new(info.id));
    if let Err(e) = (info.run)(ctx, &mut rec) {
        rec.0.status = Status::Fail;
        rec.0.error = Some(e.to_string());
    }
    (rec.0, start.elapsed().as_millis() as u64)
}

/// Runs the selected checks and assembles the report in registry order,
/// comparing derived values with `golden`.
pub fn run(ctx: &Context, ids: &[&str], golden: &GoldenValues) -> Result<VerificationReport, UnknownCheck> {
    let mut selected: Vec<&CheckInfo> = Vec::new();
    for id in ids {
        let info = lookup(id)?;
        if !selected.iter().any(|c| c.id == info.id) {
            selected.push(info);
        }
    }
    selected.sort_by_key(|c| REGISTRY.iter().position(|r| r.id == c.id));

    // Shared inputs are built first so the checks themselves never block on
    // each other.
    let mut prep_ms: Vec<(&str, u64)> = Vec::new();
    let needs_relation = selected.iter().any(|c| c.needs != Needs::Nothing)
        || selected.iter().any(|c| c.id == "relations" && ctx.cfg.max_degree >= RELATION_DEGREE);
    if needs_relation {
        let start = Instant::now();
        let _ = ctx.relation(ctx.variant());
        let _ = ctx.f();
        prep_ms.push(("relation", start.elapsed().as_millis() as u64));
    }
    if selected.iter().any(|c| c.needs == Needs::BothRelations) {
        let start = Instant::now();
        for v in super::catalog::U5Variant::BOTH {
            let _ = ctx.relation(v);
        }
        prep_ms.push(("relation (other variant)", start.elapsed().as_millis() as u64));
    }

    let results = par::map(&selected, |info| run_one(info, ctx));
    let mut report = VerificationReport::default();
    for (rec, ms) in results {
        report.timings_ms.insert(rec.id.clone(), ms);
        report.records.push(rec);
    }
    for (name, ms) in prep_ms {
        report.timings_ms.insert(format!("shared: {name}"), ms);
    }
    golden::compare(&mut report, golden);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let ids = check_ids();
        let set: std::collections::HashSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
        assert_eq!(default_ids(false).len(), 11);
        assert_eq!(default_ids(true).len(), 12);
    }

    #[test]
    fn unknown_ids_list_the_valid_ones() {
        let err = lookup("nope").err().unwrap();
        assert!(err.to_string().contains("relations"));
        assert!(err.to_string().contains("unique-decic"));
    }

    #[test]
    fn fingerprint_is_stable() {
        assert_eq!(fingerprint(""), "cbf29ce484222325");
        assert_eq!(fingerprint("a"), "af63dc4c8601ec8c");
    }
}
