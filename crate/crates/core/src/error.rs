use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular matrix: det(B) = 0")]
    SingularMatrix,
    #[error("unbounded domain: adj(B) has a negative entry")]
    UnboundedDomain,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("division by zero: negative exponent at a zero argument")]
    DivisionByZero,
    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),
    #[error("monomial z^({0},{1}) is not square integrable")]
    NotSquareIntegrable(i64, i64),
    #[error("series did not stabilize before truncation cap {0}")]
    NoConvergence(u32),
    #[error("sampling exhausted after {0} rejections")]
    SamplingExhausted(u64),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Variant name, used as a stable tag in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::SingularMatrix => "SingularMatrix",
            Error::UnboundedDomain => "UnboundedDomain",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::DivisionByZero => "DivisionByZero",
            Error::SingularEvaluation(_) => "SingularEvaluation",
            Error::NotSquareIntegrable(..) => "NotSquareIntegrable",
            Error::NoConvergence(_) => "NoConvergence",
            Error::SamplingExhausted(_) => "SamplingExhausted",
            Error::TooLarge(_) => "TooLarge",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
