//! Independent oracles, published reference values and randomized property
//! checks shared by the test suites of the workspace.

pub mod golden;
pub mod oracles;
pub mod properties;
