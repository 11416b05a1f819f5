//! Front end for `perdom-core`: datum files, reports in human and machine
//! form, the acceptance criteria and the golden-file self-test.

pub mod commands;
pub mod criteria;
pub mod datum;
pub mod error;
pub mod human;
pub mod oracle;
pub mod report;
pub mod selftest;

pub use error::{CliError, CliResult};
pub use report::Report;
