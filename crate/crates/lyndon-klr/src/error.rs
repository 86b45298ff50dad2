use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("invalid Cartan type {series}{rank}")]
    InvalidType { series: char, rank: usize },
    #[error("letter {0} is not in the alphabet")]
    UnknownLetter(u8),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor} (remainder {remainder})")]
    InexactDivision {
        dividend: String,
        divisor: String,
        remainder: String,
    },
    #[error("{value} is not a perfect square (remainder {remainder})")]
    NotASquare { value: String, remainder: String },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("elements live over different Cartan data")]
    DatumMismatch,
    #[error("zero element has no minimal word")]
    ZeroElement,
    #[error("word {0} is not Lyndon")]
    NotLyndon(String),
    #[error("word {0} is not good")]
    NotGood(String),
    #[error("empty word")]
    EmptyWord,
    #[error("weight {0} is not a positive root")]
    NotARoot(String),
    #[error("height {height} exceeds the cap {cap}")]
    ResourceCap { height: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no construction available for {0}")]
    NoConstruction(String),
    #[error("relation check failed: {0}")]
    RelationFailure(String),
}
