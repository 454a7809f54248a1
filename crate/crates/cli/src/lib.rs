//! Command-line front end for `afferm-core`: verification suites, Slater
//! kernels, the conjecture explorer and Kashiwara indices, with JSON reports.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;
pub mod sample;
pub mod verify;
