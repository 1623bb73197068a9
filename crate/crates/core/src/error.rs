use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The variants line up with the process exit codes of the `tsa` binary:
/// input problems exit with 2, infeasible computations with 3.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("{what} needs {required} elements, above the cap of {cap}")]
    CapExceeded {
        what: String,
        required: String,
        cap: usize,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("strategy `{strategy}` does not apply to the {monad} monad")]
    StrategyMismatch { strategy: String, monad: String },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn cap(what: impl Into<String>, required: Option<u128>, cap: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            required: match required {
                Some(n) => n.to_string(),
                None => "more than 2^128".to_string(),
            },
            cap,
        }
    }

    /// Exit code used by the command-line interface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::StrategyMismatch { .. } => 2,
            Error::CapExceeded { .. } | Error::Unsupported(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
