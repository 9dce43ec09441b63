//! Instance language, command surface and reports for the `redprod` binary.

pub mod commands;
pub mod dot;
pub mod dsl;
pub mod error;
pub mod formula_text;
pub mod harness;
mod lex;

pub use commands::{run_command, Command, Report, Settings};
pub use dsl::{parse_instance, render, InstanceSpec};
pub use error::{CliError, ParseError, ParseErrorKind};
pub use formula_text::parse_formula;
