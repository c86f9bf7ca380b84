//! Command-line front end: curve files and analysis reports.

pub mod file;
pub mod report;
