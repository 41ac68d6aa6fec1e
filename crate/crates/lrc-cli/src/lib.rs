//! Command-line front end for the locally repairable code toolkit.
//!
//! The library half of the binary: text serialization for fields, matrices,
//! codes, and evaluation grids ([`textfmt`]), ordered key/value report
//! documents ([`report`]), and the argument grammar plus command execution
//! ([`cli`]). Keeping it all in the library lets integration tests drive the
//! exact code paths the binary runs.

pub mod cli;
pub mod report;
pub mod textfmt;
