//! Std companion of `egse-core`: parallel trial execution, CSV/JSON output
//! and the `egse` command-line front end.

pub mod cli;
pub mod commands;
pub mod format;
pub mod runner;
pub mod spec;

pub use spec::{ExperimentSpec, OutputFormat};
