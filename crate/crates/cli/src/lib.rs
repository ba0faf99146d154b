//! JSON spec loading, the check commands and report output for poisson-forge.

#![allow(clippy::type_complexity)]

pub mod commands;
pub mod error;
pub mod eval;
pub mod expr;
pub mod fixtures;
pub mod report;
pub mod resolve;
pub mod schema;

pub use commands::{run, Command};
pub use error::{CliError, CliResult};
pub use report::{Record, Report, Verdict};
pub use resolve::{Session, Workspace};
pub use schema::SpecFile;

/// Environment variable holding the seed for randomized checks.
pub const SEED_VAR: &str = "POISSON_FORGE_SEED";

/// The seed from [`SEED_VAR`], or the fixed default when unset.
pub fn seed_from_env() -> CliResult<u64> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(resolve::DEFAULT_SEED),
    }
}
