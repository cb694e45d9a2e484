use thiserror::Error;

use crate::semiring::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar {scalar} is not an element of {semiring}")]
    Domain { scalar: Scalar, semiring: String },
    #[error("sum or comparison {0} involving the adjoined identity is undefined")]
    UndefinedPartialSum(String),
    #[error("invalid semiring: {0}")]
    InvalidSemiring(String),
    #[error("element {0} does not have finite order within the iteration cap")]
    NotFiniteOrder(Scalar),
    #[error("exhaustive check requested on an infinite carrier ({0})")]
    InfeasibleExhaustive(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrices are over different semirings")]
    SemiringMismatch,
    #[error("matrices belong to different families ({0} vs {1})")]
    FamilyMismatch(String, String),
    #[error("empty matrix sequence")]
    EmptySequence,
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("unsupported matrix family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("sequence length {k} exceeds the exhaustive cap {cap}")]
    CapExceeded { k: usize, cap: usize },
    #[error("path assignment shape does not match the sequence: {0}")]
    ShapeMismatch(String),
    #[error("bad scale: {0}")]
    BadScale(String),
    #[error("bad epsilon: {0}")]
    BadEpsilon(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("sequence of length {len} is shorter than the required {required}")]
    LengthTooShort { len: usize, required: String },
    #[error("no pair of matrices with equal quotient image")]
    NoPairFound,
    #[error("matrix {index} does not match the required pattern: {reason}")]
    PatternMismatch { index: usize, reason: String },
    #[error("no case of the left-zero argument applied: {0}")]
    CaseFallthrough(String),
    #[error("bad interval: {0}")]
    BadInterval(String),
    #[error("{0} lies outside the domain of the map")]
    OutOfDomain(String),
    #[error("witness failed verification: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
