//! File formats, reports and the command-line front end for `hhsg-core`.

pub mod cli;
pub mod formats;
pub mod report;
