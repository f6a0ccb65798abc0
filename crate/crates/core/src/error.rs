use thiserror::Error;

/// Every failure the library reports. The variants group into input
/// problems, certification failures and exhausted search bounds, which is
/// how the command-line front end maps them to exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("the algebra is a polynomial ring in one loop, which is excluded here")]
    PolynomialRing,

    #[error("wrong shape: {0}")]
    Shape(String),

    #[error("not gentle: {0}")]
    NotGentle(String),

    #[error("not in the image of the embedding: {0}")]
    NotInImage(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("derivation condition fails for arrow {arrow}: {reason}")]
    DerivationCondition { arrow: String, reason: String },

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("not invertible over the polynomial ring: det = {0}")]
    NotInvertible(String),

    #[error("no conjugating unit: {0}")]
    NoSolution(String),

    #[error("structure violation during {stage}: {detail}")]
    Structure { stage: String, detail: String },

    #[error("path length bound {bound} exceeded (witness {witness}); raise the bound")]
    BoundExceeded { bound: usize, witness: String },

    #[error("derivation is not nilpotent within {cap} iterations on arrow {arrow}")]
    NilpotencyCap { cap: usize, arrow: String },

    #[error("degree cap {cap} exhausted: {context}")]
    CapExhausted { cap: usize, context: String },
}

impl Error {
    pub(crate) fn structure(stage: &str, detail: impl Into<String>) -> Self {
        Error::Structure {
            stage: stage.to_string(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
