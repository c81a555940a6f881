//! Command-line front end for `syzcert`.

pub mod commands;
pub mod input;

pub use commands::{emit_report, execute, exit_code, Cli, Format, UsageError};
