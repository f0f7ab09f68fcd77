//! CLI surface, input formats, deterministic sampling, and the Monte Carlo
//! validation harness on top of the core library.

pub mod cli;
pub mod input;
pub mod report;
pub mod sample;
pub mod validate;

pub use cli::run_cli;
