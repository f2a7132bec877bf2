use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 2..=16")]
    UnsupportedDegree(u32),
    #[error("modulus {0:#x} is not irreducible over GF(2)")]
    ModulusNotIrreducible(u32),
    #[error("modulus {modulus:#x} does not have degree {t}")]
    ModulusDegreeMismatch { modulus: u32, t: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {k} is out of range for a field of order {q}")]
    ExponentOutOfRange { k: usize, q: usize },
    #[error("the zero polynomial has no finite root count")]
    ZeroPolynomial,
    #[error("polynomial degree {degree} is not below the field order {q}")]
    DegreeTooLarge { degree: usize, q: usize },
    #[error("parts sum to {sum}, expected {n}")]
    PartitionMismatch { n: u64, sum: u64 },
    #[error("{0} is not a supported prime modulus")]
    UnsupportedPrime(u64),
    #[error("2^{t} is not larger than the degree {deg}")]
    FieldTooSmall { deg: u32, t: u32 },
    #[error("no value bound for variable {0}")]
    UnboundVariable(char),
    #[error("offset u = {u} gives a negative target sum")]
    InvalidOffset { u: u64 },
    #[error("deg*(m+u) = {span} reaches 2(q-1) = {limit}; the coefficient wraps more than once")]
    WrapOverlap { span: u64, limit: u64 },
    #[error("transform scalars a and b must be nonzero")]
    DegenerateTransform,
    #[error("divisor is not monic in variable {0}")]
    NonMonicDivisor(char),
    #[error("degree {0} has no normalized shape (expected 6 or 7)")]
    UnsupportedShape(usize),
    #[error("t = {0} exceeds the search bound of 11")]
    SearchTooLarge(u32),
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("bad data file: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(token: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Parse { token: token.into(), reason: reason.into() }
}
