use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("constant term violates precondition: {0}")]
    ConstantTerm(String),
    #[error("substitution does not terminate: {0}")]
    NonTerminating(String),
    #[error("truncation mismatch: {0}")]
    TruncationMismatch(String),
    #[error("integrality violation: coefficient {coef} at x^{n} y^{m}")]
    Integrality { n: u32, m: u32, coef: String },
    #[error("not a 2-connected graph series: {0}")]
    NotGraphSeries(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
