use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("variable `{0}` is not bound in this evaluation context")]
    UnboundVariable(String),

    #[error("domain error: {what} at {at}")]
    Domain { what: String, at: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("{what} did not converge (residual {residual:e})")]
    NoConvergence { what: String, residual: f64 },

    #[error("residual `{name}` = {value:e} exceeds tolerance {tol:e}")]
    Residual { name: String, value: f64, tol: f64 },

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<GeomError>,
    },
}

impl GeomError {
    pub fn domain(what: impl Into<String>, at: impl Into<String>) -> Self {
        GeomError::Domain {
            what: what.into(),
            at: at.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        GeomError::InvalidInput(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        GeomError::Degenerate(msg.into())
    }

    /// Wraps an error with the pipeline stage it came from.
    pub fn at_stage(self, stage: &'static str) -> Self {
        GeomError::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// True for errors caused by evaluating outside a function's domain.
    pub fn is_math_domain(&self) -> bool {
        match self {
            GeomError::Domain { .. } | GeomError::Degenerate(_) => true,
            GeomError::Stage { source, .. } => source.is_math_domain(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
