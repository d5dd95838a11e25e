use thiserror::Error;

/// Errors raised by the depth engines.
///
/// The CLI maps these onto exit codes: validation problems exit with 2,
/// unsupported decompositions with 3 and exceeded caps with 4.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DepthError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("missing field: {0}")]
    MissingField(&'static str),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{what} exceeds cap {limit}")]
    CapExceeded { what: String, limit: usize },

    #[error("bipartite graph is disconnected ({components} components); split the inclusion matrix into blocks")]
    Disconnected { components: usize },

    #[error("decomposition unsupported: {0}")]
    Unsupported(String),

    #[error("axiom violated: {0}")]
    AxiomViolation(String),
}

impl DepthError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        DepthError::InvalidInput(msg.into())
    }

    pub fn cap(what: impl Into<String>, limit: usize) -> Self {
        DepthError::CapExceeded {
            what: what.into(),
            limit,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            DepthError::Unsupported(_) => 3,
            DepthError::CapExceeded { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = DepthError> = std::result::Result<T, E>;
