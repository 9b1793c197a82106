use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("linear system is singular")]
    SingularSystem,
    #[error("curve is contained in a hyperplane")]
    CurveInHyperplane,
    #[error("degenerate invariant: template denominator vanishes identically")]
    DegenerateInvariant,
    #[error("all Möbius-commuting invariants are constant")]
    AllInvariantsConstant,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("properness check needs a rational curve")]
    NotRational,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid Möbius map: ad - bc = 0")]
    InvalidMoebius,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
