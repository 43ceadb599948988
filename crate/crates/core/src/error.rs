use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input lies outside the domain of a mathematical function (poles,
    /// excluded parameter ranges).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural precondition on the arguments failed.
    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument { field: &'static str, reason: String },

    /// The quadrature rule cannot integrate the requested products exactly.
    #[error("insufficient quadrature order: have {have}, need at least {need}")]
    InsufficientQuadrature { have: usize, need: usize },

    /// Division by a vanishing factor produced values that blow up at the
    /// extreme nodes.
    #[error("singularity detected in slice (l={mode}): extreme/median ratio {ratio:e}")]
    Singularity { mode: usize, ratio: f64 },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            field,
            reason: reason.into(),
        }
    }
}
