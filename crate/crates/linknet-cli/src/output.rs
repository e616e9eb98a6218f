//! Error plumbing and the deterministic output header.

use linknet::doc::DocError;
use linknet::lp::LpError;
use linknet::net::NetError;
use linknet::simple::SimpleError;
use linknet::smoothing::SmoothingError;
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Io(std::io::Error),
    Doc(DocError),
    Unsupported(String),
    Check(String),
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Doc(_) | CliError::Unsupported(_) => {
                crate::EXIT_PARSE_ERROR
            }
            CliError::Check(_) => crate::EXIT_CHECK_FAILED,
            CliError::Budget(_) => crate::EXIT_BUDGET,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Doc(e) => write!(f, "{e}"),
            CliError::Unsupported(m) => write!(f, "{m}"),
            CliError::Check(m) => write!(f, "{m}"),
            CliError::Budget(m) => write!(f, "{m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<DocError> for CliError {
    fn from(e: DocError) -> Self {
        CliError::Doc(e)
    }
}

impl From<NetError> for CliError {
    fn from(e: NetError) -> Self {
        CliError::Check(e.to_string())
    }
}

impl From<SimpleError> for CliError {
    fn from(e: SimpleError) -> Self {
        CliError::Check(e.to_string())
    }
}

impl From<LpError> for CliError {
    fn from(e: LpError) -> Self {
        match e {
            LpError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Check(other.to_string()),
        }
    }
}

impl From<SmoothingError> for CliError {
    fn from(e: SmoothingError) -> Self {
        match e {
            SmoothingError::Lp(LpError::BudgetExceeded { .. }) => {
                CliError::Budget(e.to_string())
            }
            other => CliError::Check(other.to_string()),
        }
    }
}

/// The standard header: every text output starts with this line so the
/// verification bound is explicit.
pub fn header(field: &str, n: usize, mode: &str, radius: usize, window: usize) -> String {
    format!("# linknet | field={field} | n={n} | mode={mode} | radius={radius} | window={window}")
}
