//! Library side of the `ftri` command: output documents, the on-disk cache
//! and the subcommand implementations.

pub mod cache;
pub mod commands;
pub mod document;

pub use cache::Cache;
pub use commands::{CliError, Settings, Status, SweepLine};
pub use document::{Format, OutputDocument, Payload, SCHEMA_VERSION};
