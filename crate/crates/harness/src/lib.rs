//! Parameter sweeps, figure data, validation and the `uavnet` command line.

pub mod cli;
pub mod error;
pub mod figures;
pub mod output;
pub mod sweep;
pub mod validate;

pub use error::{HarnessError, Result};

/// `git describe` of the source tree this binary was built from.
pub const GIT_DESCRIBE: &str = env!("UAVNET_GIT_DESCRIBE");
