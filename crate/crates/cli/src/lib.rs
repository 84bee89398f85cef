//! Command implementations and the JSON report type behind the `a6arc`
//! binary.

pub mod commands;
pub mod report;

pub use report::{Params, RunReport, Timing};
