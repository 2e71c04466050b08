//! Drivers for the `thetaring` binary: run configuration, the verification
//! suites, reports and certificate files.

pub mod certfile;
pub mod config;
pub mod report;
pub mod suites;

pub use config::{ConfigError, RunConfig};
pub use report::{Report, Verdict};
