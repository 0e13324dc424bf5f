use thiserror::Error;

/// Everything that can go wrong while building or evaluating an ensemble.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Parameters violate a structural precondition (divisibility, ranges, lengths).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An exhaustive computation would exceed its hard cap.
    #[error("budget exceeded: {what} needs {requested}, limit is {limit}")]
    Budget {
        what: &'static str,
        requested: String,
        limit: String,
    },

    /// A combinator was applied to an ensemble without the required symmetry,
    /// or an expression does not have the requested shape.
    #[error("symmetry/shape violation: {0}")]
    Shape(String),

    /// No positive saddle point exists for the requested target.
    #[error("no saddle root: {0}")]
    NoRoot(String),

    /// Growth-rate curve never crosses zero from below on the searched interval.
    #[error("no zero crossing: {0}")]
    NoCrossing(String),

    /// Growth rate is not strictly negative on the interval, so no vanishing-probability
    /// certificate can be issued.
    #[error("tail bound not certified: supremum {sup} is not negative on [0, {upper}]")]
    NotCertified { sup: f64, upper: f64 },

    /// Malformed ensemble document.
    #[error("schema error: {0}")]
    Schema(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 1,
            Error::InvalidParameters(_) | Error::Shape(_) | Error::Schema(_) => 2,
            Error::Budget { .. } => 3,
            Error::NoRoot(_) | Error::NoCrossing(_) | Error::NotCertified { .. } => 4,
        }
    }

    pub(crate) fn budget(what: &'static str, requested: impl ToString, limit: impl ToString) -> Self {
        Error::Budget {
            what,
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
