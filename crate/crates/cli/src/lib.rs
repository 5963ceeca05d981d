//! Batch front end for zetabound: scans, reports, zero-table downloads and config files.

pub mod config;
pub mod fetch;
pub mod report;
pub mod scan;
