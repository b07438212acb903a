use thiserror::Error;

/// Errors raised while building or analysing sequencing problems and cycles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("{symbols} symbols but {multiplicities} multiplicities")]
    ArityMismatch { symbols: usize, multiplicities: usize },
    #[error("symbol label at index {0} is empty")]
    EmptyLabel(usize),
    #[error("duplicate symbol label `{0}`")]
    DuplicateLabel(String),
    #[error("multiplicity of `{0}` must be positive")]
    ZeroMultiplicity(String),
    #[error("cycle has length {actual}, problem requires {expected}")]
    CycleLength { expected: usize, actual: usize },
    #[error("symbol index {index} out of range for an alphabet of {size}")]
    SymbolOutOfRange { index: usize, size: usize },
    #[error("symbol `{label}` occurs {actual} times, problem requires {expected}")]
    NotAdmissible { label: String, expected: usize, actual: usize },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("moment order must be at least 1")]
    ZeroOrder,
    #[error("operation requires a binary alphabet, got {0} symbols")]
    NotBinary(usize),
    #[error("multiplicities are not all equal")]
    UnequalMultiplicities,
    #[error("problem size N={size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("model requires N >= 2, got N={0}")]
    ModelTooSmall(usize),
    #[error("{0}")]
    Convention(String),
    #[error("cycles do not all belong to the same problem")]
    MixedProblems,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
