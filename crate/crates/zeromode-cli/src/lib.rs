//! Library half of the command-line driver: sweep implementations, grid
//! parsing, deterministic table output and the verification suite. The
//! `zeromode` binary is a thin argument-parsing wrapper over these modules,
//! which keeps every check callable from the test suites as well.

pub mod figures;
pub mod grid;
pub mod output;
pub mod report;
