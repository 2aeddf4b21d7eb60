//! Command-line front end for `towerlim-core`.
//!
//! The binary is a thin wrapper around [`app::execute`], which is also what
//! the integration tests drive.

pub mod app;
pub mod commands;
pub mod error;
pub mod report;
pub mod repro;
pub mod scenario;

pub use error::CliError;
