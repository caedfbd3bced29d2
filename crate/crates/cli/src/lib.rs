//! File formats, certificate replay and the command implementations
//! behind the `cyclomds` binary.

pub mod args;
pub mod certificate;
pub mod commands;
mod error;
pub mod tables;

pub use error::{CliError, ExitStatus};
