//! Command-line front end: input documents, command dispatch and output formats.

pub mod commands;
pub mod document;
pub mod error;
pub mod output;

pub use commands::{run, Cli, Command};
pub use document::{parse_bcn, BcnDocument, Payload};
pub use error::CliError;
