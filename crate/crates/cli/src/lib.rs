//! Scenario-driven front end for `hilbext-core`: file formats, reports and
//! the `validate`, `construct`, `cohomology`, `classify`, `iso` and `norm`
//! commands.

pub mod commands;
pub mod error;
pub mod parse;
pub mod report;
pub mod scenario;
pub mod suites;

pub use commands::Options;
pub use error::CliError;
pub use report::{Format, Report};
pub use scenario::Scenario;
