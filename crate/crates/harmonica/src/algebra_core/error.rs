use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("generator index {index} out of range for alphabet {alphabet}")]
    GeneratorOutOfRange { alphabet: String, index: u8 },
    #[error("letters out of factor order for alphabet {0}")]
    FactorOrder(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no image recorded for letter {0}")]
    MissingImage(String),
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("matrix admits no sequence of unit pivots")]
    NoUnitPivot,
}
