//! Command-line front end for `qcalc`: the `diff`, `integrate` and `verify`
//! commands, with their report format and seeded suites.

pub mod commands;
pub mod report;
pub mod sampling;
pub mod suites;
