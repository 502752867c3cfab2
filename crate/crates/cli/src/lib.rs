//! Command-line front end for `mcg-core`: argument parsing, text formats and
//! report rendering. The binary in `main.rs` is a thin wrapper around [`run`].

pub mod commands;
pub mod formats;

pub use commands::{
    certificate_report, run, Cli, CliError, Command, OutputFormat, Report, SCHEMA_VERSION,
};
