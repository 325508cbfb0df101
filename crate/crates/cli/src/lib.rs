//! Batch front end: parses a job description file, runs one command and
//! renders a deterministic report.

pub mod commands;
pub mod input;
pub mod report;

pub use commands::{run, run_source, Command, Job};
pub use report::{Report, Status};
