//! Command-line front end for the deferred investment payroll engine.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{run, Cli, Outcome};
