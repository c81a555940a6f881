//! Check records and their two renderings: an aligned table for people and a
//! JSON document that parses back into the same report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const FORMAT_TAG: &str = "syzcert-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Whether a value restates a claim of the source or was computed here
/// without a stated counterpart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Claimed,
    Derived,
}

/// One computed quantity. Scalars are exact fraction strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    pub key: String,
    pub value: String,
    pub provenance: Provenance,
    /// Claimed value, for entries restating a claim.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

impl Value {
    /// Whether the computed value agrees with the claimed one.
    pub fn matches(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| *e == self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub values: Vec<Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn new(id: &str) -> Self {
        CheckRecord { id: id.to_string(), status: Status::Pass, values: Vec::new(), notes: Vec::new(), error: None }
    }

    pub fn value(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|v| v.key == key).map(|v| v.value.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    /// Wall time per check id in milliseconds; not part of the report body.
    #[serde(default)]
    pub timings_ms: BTreeMap<String, u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported report format `{0}`")]
    Format(String),
    #[error("duplicate check id `{0}`")]
    Duplicate(String),
}

#[derive(Serialize, Deserialize)]
struct Document {
    format: String,
    #[serde(flatten)]
    report: VerificationReport,
}

impl VerificationReport {
    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    /// The records alone, as JSON; identical across reruns.
    pub fn body(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("records serialize")
    }

    pub fn to_machine(&self) -> String {
        let doc = Document { format: FORMAT_TAG.to_string(), report: self.clone() };
        let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_machine(text: &str) -> Result<Self, ReportError> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.format != FORMAT_TAG {
            return Err(ReportError::Format(doc.format));
        }
        let mut seen = std::collections::HashSet::new();
        for r in &doc.report.records {
            if !seen.insert(r.id.as_str()) {
                return Err(ReportError::Duplicate(r.id.clone()));
            }
        }
        Ok(doc.report)
    }

    pub fn to_human(&self) -> String {
        let id_w = self.records.iter().map(|r| r.id.len()).max().unwrap_or(0).max(5);
        let key_w = self.records.iter().flat_map(|r| r.values.iter().map(|v| v.key.len())).max().unwrap_or(0).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{:<id_w$}  {:<7}  {:<key_w$}  value", "check", "status", "key");
        for r in &self.records {
            let time = self.timings_ms.get(&r.id).map(|t| format!(" ({t} ms)")).unwrap_or_default();
            let _ = writeln!(out, "{:<id_w$}  {:<7}  {}", r.id, r.status.as_str(), time.trim_start());
            for v in &r.values {
                let tag = match v.provenance {
                    Provenance::Claimed => "claimed",
                    Provenance::Derived => "derived",
                };
                let shown = if v.value.len() > 72 { format!("{}...", &v.value[..72]) } else { v.value.clone() };
                let mismatch = if v.matches() { String::new() } else { format!("  expected {}", v.expected.as_deref().unwrap_or("")) };
                let _ = writeln!(out, "{:<id_w$}  {:<7}  {:<key_w$}  {shown} [{tag}]{mismatch}", "", "", v.key);
            }
            for n in &r.notes {
                let _ = writeln!(out, "{:<id_w$}  {:<7}  note: {n}", "", "");
            }
            if let Some(e) = &r.error {
                let _ = writeln!(out, "{:<id_w$}  {:<7}  error: {e}", "", "");
            }
        }
        out
    }
}
