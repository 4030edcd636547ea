use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("interval endpoints must satisfy a < b")]
    EmptyInterval,
    #[error("interval endpoint {0} is a root of the polynomial")]
    EndpointIsRoot(String),
    #[error("invalid real algebraic representation: {0}")]
    InvalidRealAlg(String),
    #[error("expected a < b, but the points are not in increasing order")]
    NotIncreasing,
    #[error("malformed rational literal `{0}`")]
    Literal(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
