//! Command-line front end for the `qccdts` library: build, reflect, verify
//! and distance pipelines over JSON code files, the embedded reference
//! tables, and strong-DTS search.

pub mod commands;
pub mod input;
pub mod tables;
