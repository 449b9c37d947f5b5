use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("polynomials over {left} and {right} variables cannot be combined")]
    VariableMismatch { left: usize, right: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("zero generator: {0}")]
    ZeroGenerator(String),

    #[error("factorization does not multiply back: {0}")]
    Factorization(String),

    #[error("objects live over different graded rings")]
    RingMismatch,

    #[error("potion elements over different submonoids")]
    SubmonoidMismatch,

    #[error("submonoid is not relevant: {0}")]
    NotRelevant(String),

    #[error("submonoid is not maximally relevant: {0}")]
    NotMaximallyRelevant(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error("invalid graded homomorphism: {0}")]
    InvalidHom(String),

    #[error("malformed witness: {0}")]
    Witness(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
