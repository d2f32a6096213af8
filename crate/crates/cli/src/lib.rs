//! Command implementations behind the `phic` binary. Each command returns
//! the report text it would print so it can be tested without a process.

pub mod args;
pub mod commands;
pub mod error;

pub use error::{exit, CliError, CliResult};
