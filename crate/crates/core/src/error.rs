use thiserror::Error;

/// Errors raised while constructing, evaluating or certifying kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of a function (e.g. `w <= 0`, a pole).
    #[error("domain error: {0}")]
    Domain(String),

    /// A model or function parameter violates its declared constraints.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A malformed argument: mismatched point type, short grid, wrong arity.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A combinator was applied to inputs that do not carry the required flags.
    #[error("construction error: {0}")]
    Construction(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Rejection sampling ran out of budget.
    #[error("sampling error in {space}: {reason}")]
    Sampling { space: String, reason: String },

    /// Non-finite values reached a numerical routine.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A certification trial failed; wraps the underlying error.
    #[error("trial {index}: {source}")]
    Trial {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// Configuration could not be parsed or interpreted.
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    /// Innermost error, looking through trial wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Trial { source, .. } => source.root(),
            other => other,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Config(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
