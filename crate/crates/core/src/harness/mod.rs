//! Task files, generators, the bundled string corpus and the benchmark
//! runner.

pub mod corpus;
pub mod gen;
pub mod run;
pub mod suite;
pub mod task;

pub use run::{run_task, run_task_with, Libraries, LossChoice, Protocol, RunConfig, RunRecord, TaskOutcome};
pub use suite::{format_summary, run_suite, summarize, write_csv, SuiteConfig, SummaryRow};
pub use task::{load_suite, DomainKind, Task, TaskParams};

use crate::kernel::StateError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    State(#[from] StateError),
    #[error("{0}")]
    Invalid(String),
}
