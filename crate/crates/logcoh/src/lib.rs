//! IO companion for `logcoh-core`: JSON schemas for pairs, filtered
//! complexes, and arrangements, the built-in fixture catalog, and report
//! formatting shared by the CLI.

pub mod fixtures;
pub mod report;
pub mod schema;
