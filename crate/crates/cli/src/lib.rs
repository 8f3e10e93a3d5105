//! Library surface of the scenario runner (the `curlab` binary is a thin
//! wrapper over these modules).

pub mod catalog;
pub mod report;
pub mod scenario;
pub mod suites;
