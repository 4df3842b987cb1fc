//! Library backing the `varlat` command-line tool: JSON and DOT codecs for
//! the core types, the verification suites, and the command
//! implementations (kept as functions so suites and tests can drive them).

pub mod commands;
pub mod dot;
pub mod json;
pub mod report;
pub mod suites;

pub use commands::{CliError, CmdOutput};
pub use report::{Check, Coverage, ALL_OPS};
