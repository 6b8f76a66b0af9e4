//! Job files, orchestration and report emission for the `jetdisc` binary.

pub mod job;
pub mod report;
pub mod run;

pub use job::{Budgets, JobFile, ParseError, Task};
pub use report::{emit_report, Format, Report, Table};
pub use run::{run_job, run_parsed, CliError, RunOptions};
