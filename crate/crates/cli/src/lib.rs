//! JSON job and report formats and the command dispatcher behind the
//! `sftgroup` binary.

pub mod error;
pub mod job;
pub mod report;
pub mod run;

pub use error::CliError;
pub use job::{parse_job, parse_job_value, Command, JobSpec};
pub use report::{emit_report, parse_report, OutputFormat, Report};
pub use run::run_job;
