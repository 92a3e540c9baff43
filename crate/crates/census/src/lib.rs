//! File formats, JSON reports, the bundled corpus and the `census` command
//! line for the `tourney` counting engine.

pub mod bench;
pub mod cli;
pub mod corpus;
pub mod format;
pub mod report;
