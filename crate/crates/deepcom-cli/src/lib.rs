//! Std companion to `deepcom-core`: JSON file formats for groups and
//! extensions, plus the structured reports the `deepcom` binary prints.

pub mod io;
pub mod report;
