use thiserror::Error;

use crate::exactlin::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor an admissible prime")]
    InvalidField(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("not a chain map at degree {degree}")]
    NotAChainMap { degree: i32 },
    #[error("nonzero homology at degree {degree} outside the requested support")]
    HomologyOutsideSupport { degree: i32 },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("no coaugmentation: found {found} one-dimensional subcoalgebras")]
    NoCoaugmentation { found: usize },
    #[error("coalgebra is not conilpotent")]
    NotConilpotent,
    #[error("structure mismatch: {0}")]
    Mismatch(String),
    #[error("axiom violated: {0}")]
    Axiom(String),
    #[error("cap {cap} exceeded (last cokernel dimension {last_dim})")]
    CapExceeded { cap: usize, last_dim: usize },
    #[error("stabilization not reached by depth {depth}")]
    NotStabilized { depth: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("scenario error at {path}: {message}")]
    Scenario { path: String, message: String },
}
