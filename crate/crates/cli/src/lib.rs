//! Library side of the `pact` command: fixture loading, the theorem suite and reports.

pub mod commands;
pub mod load;
pub mod report;
pub mod suite;

pub use load::{load, CliError};
pub use report::{CheckRecord, Report, Verdict};
pub use suite::run_theorem_suite;
