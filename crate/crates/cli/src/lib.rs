//! Config-driven front end for `cohomlim-core`: parsing, command dispatch,
//! report rendering and the `verify-all` harness.

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

pub use commands::{run, Command, Options};
pub use config::{parse_config, parse_str, Config};
pub use report::{Format, Report};

use cohomlim_core::Error;

pub const BUDGET_ENV: &str = "COHOMLIM_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown reference: {0}")]
    UnknownReference(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<CliError>,
    },
    #[error("io error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn context(self, context: String) -> Self {
        CliError::Context {
            context,
            source: Box::new(self),
        }
    }

    pub fn root(&self) -> &CliError {
        match self {
            CliError::Context { source, .. } => source.root(),
            e => e,
        }
    }

    /// 2 for input and validation errors, 3 when a budget is exceeded.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

/// Exit code for a finished report: 0 if every assertion held, 1 otherwise.
pub fn report_exit_code(report: &Report) -> i32 {
    if report.ok {
        0
    } else {
        1
    }
}
