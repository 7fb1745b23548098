//! File formats, verification suites and the command-line front end for
//! `bellinv-core`.

pub mod cli;
pub mod format;
pub mod suite;

pub use bellinv_core as core;
