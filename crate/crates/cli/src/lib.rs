//! Command-line driver for the `vsa-core` pipelines.

pub mod commands;
pub mod config;
pub mod parse;

pub use commands::{run, run_config, Outcome};
pub use config::{Cli, Command, OutputFormat, RunConfig};
pub use parse::{parse_expr, parse_field, FieldExpr, ParseError, ParseErrorKind};
