//! Text front end: expression grammar, command dispatch and JSON reports.

pub mod error;
pub mod eval;
pub mod parse;
pub mod print;

pub use error::{CliError, CliResult};
pub mod commands;

pub use commands::{run, run_args, Cli, Report};
