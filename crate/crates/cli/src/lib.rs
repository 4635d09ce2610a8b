//! The `shortgf` command-line tool: file-based access to the generating-function calculus, the
//! circuit encoders and the number-theoretic demos, plus a self-test runner.

pub mod app;
pub mod selftest;

pub use app::{run, Cli, CliError};
