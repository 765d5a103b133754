use thiserror::Error;

/// Errors produced by the algebra, differentiation and parsing layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("elements belong to different Weil algebras")]
    AlgebraMismatch,

    #[error("jet truncation caps differ: {left:?} vs {right:?}")]
    CapsMismatch { left: Vec<u32>, right: Vec<u32> },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { name: String, position: usize },

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("non-vanishing monomial table would hold {size} entries (limit {limit})")]
    TooLarge { size: u128, limit: u128 },

    #[error("invalid Weil settings: {0}")]
    InvalidSettings(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
