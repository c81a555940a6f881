//! Named checks reproducing the computations behind the geometric claims,
//! the shared constants they use, and the report they produce.

pub mod catalog;
mod checks;
pub mod context;
pub mod golden;
pub mod report;

pub use checks::{check_ids, default_ids, lookup, run, CheckInfo, UnknownCheck, REGISTRY};
pub use context::{Context, Relation, RelationSource, VerifyConfig, RELATION_DEGREE};
pub use report::{CheckRecord, Provenance, ReportError, Status, Value, VerificationReport};
