//! Command-line harness around `diam-core`: deterministic point-cloud
//! generation, CSV I/O, method sweeps with an optional exact oracle, and
//! byte-stable key-value reports.

pub mod cli;
pub mod error;
pub mod generate;
pub mod pointio;
pub mod report;
pub mod runner;

pub use error::HarnessError;
