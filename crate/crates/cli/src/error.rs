use std::path::PathBuf;

use jdom_core::graph::{GenError, ParseError, PartitionError};
use jdom_core::lll::LllError;
use jdom_core::oracle::OracleError;
use jdom_core::reduction::{InstanceError, ReductionError};
use jdom_core::split::SplitError;
use jdom_core::tree::TreeError;
use thiserror::Error;

/// Failures of a command, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Guard(String),
    #[error("internal contradiction: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 input or parse error, 3 precondition, 4 guard or cap exceeded,
    /// 5 internal contradiction. Exit code 1 is reserved for `verify`
    /// rejecting a set.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Guard(_) => 4,
            CliError::Internal(_) => 5,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(format!("graph file {e}"))
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        match e {
            PartitionError::Malformed(_) => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::GuardExceeded { .. } | OracleError::TooLarge { .. } => CliError::Guard(e.to_string()),
            OracleError::VertexOutOfRange { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<TreeError> for CliError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::LabelFile { .. } | TreeError::LabelCount { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<SplitError> for CliError {
    fn from(e: SplitError) -> Self {
        match e {
            SplitError::InternalContradiction { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<LllError> for CliError {
    fn from(e: LllError) -> Self {
        match e {
            LllError::DidNotTerminate { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        match e {
            GenError::Infeasible(_) => CliError::Precondition(e.to_string()),
            GenError::RetryLimit(_) => CliError::Guard(e.to_string()),
        }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        CliError::Parse(format!("instance file: {e}"))
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}
