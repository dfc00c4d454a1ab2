use thiserror::Error;

/// Errors produced by construction, validation and enumeration.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("expected a {expected}x{expected} matrix, got dimension {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("not monomial: {0}")]
    NotMonomial(String),

    #[error("not a slot permutation")]
    NotSlotPermutation,

    #[error("{family}: parameter restriction violated: {reason}")]
    ParameterRestriction { family: &'static str, reason: String },

    #[error("scalar must have unit modulus, |z| = {0}")]
    NonUnitModulus(f64),

    #[error("conjugator Q is not invertible")]
    SingularQ,

    #[error("invalid braid letter {letter} for {n} strands")]
    InvalidLetter { letter: i64, n: usize },

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{n} strands exceeds the {path} path limit of {max}")]
    TooManyStrands { n: usize, max: usize, path: &'static str },

    #[error("group order exceeds u128 range")]
    OrderOverflow,

    #[error("modulus must be >= 1, got {0}")]
    BadModulus(i64),

    #[error("rounded hashing merged two elements that differ by more than {0}")]
    HashCollision(f64),

    #[error("no enhancement: gamma = {0} is not +1 or -1")]
    NoEnhancement(String),

    #[error("{0} must not be empty")]
    EmptyInput(&'static str),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
