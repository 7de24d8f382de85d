use thiserror::Error;

/// Errors raised by ring arithmetic, code construction and analysis.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid or mismatched parameters (ring parameter, lengths, moduli).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Malformed element, polynomial or fixture text.
    #[error("parse error: {0}")]
    Parse(String),

    /// A binary block that is not the image of any ring element.
    #[error("block {block} is not in the image of the Gray map")]
    NotInImage { block: usize },

    /// An element that was required to be a unit is not.
    #[error("{0} is not a unit")]
    NotAUnit(String),

    /// Division by a polynomial whose leading coefficient is not 1.
    #[error("unsupported divisor: {0}")]
    UnsupportedDivisor(String),

    /// An enumeration or search that would exceed its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// The requested quantity does not exist (e.g. minimum distance of the zero code).
    #[error("undefined: {0}")]
    Undefined(String),

    /// A structural property that must hold did not.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
