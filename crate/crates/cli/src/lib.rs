//! Job files, the runner, report rendering and the persistent cell cache
//! behind the `mixmult` command.

pub mod cache;
pub mod job;
pub mod report;
pub mod run;

pub use cache::DiskCache;
pub use job::{parse_job, Format, JobError, JobSpec};
pub use report::{emit, Report, REPORT_SCHEMA};
pub use run::{run_job, RunOptions};
