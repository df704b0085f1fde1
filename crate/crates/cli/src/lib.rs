//! Command-line surface for `ncdeform`. Subcommands read JSON documents and
//! emit CSV or JSON; `suite` runs the acceptance criteria.

pub mod commands;
pub mod document;
pub mod error;
pub mod suite;

pub use error::{CliError, CliResult, Kind};
