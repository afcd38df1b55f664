use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational {text:?}: {reason}")]
    MalformedRational { text: String, reason: &'static str },

    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid shape: {0}")]
    Shape(String),

    /// An operation restricted to a class of algebras was handed something
    /// outside it; the message names the violated condition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the index set I_A is empty")]
    EmptyIndexSet,

    #[error("alpha must be nonzero")]
    ZeroAlpha,

    #[error("alpha = {alpha} violates alpha^{eta} = 1 (alpha^{eta} = {power})")]
    AlphaConstraint {
        alpha: String,
        eta: u64,
        power: String,
    },

    #[error("map is singular")]
    SingularMap,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
