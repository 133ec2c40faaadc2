//! Range scanner and report rendering behind the `zsig` binary.

pub mod render;
pub mod scan;

pub use scan::{run_scan, OutputFormat, ScanConfig, ScanReport, TripleOutcome};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] zsig_core::Error),
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const EXCEPTION: i32 = 1;
    pub const INCOMPLETE: i32 = 2;
    pub const INVALID: i32 = 3;
}
