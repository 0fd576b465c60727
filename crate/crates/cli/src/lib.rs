//! Command-line harness for the `disthyp` solvers.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod runner;
pub mod svg;

pub use commands::{run, Cli};
pub use error::{CliError, CliResult};
