use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has no invertible leading coefficient")]
    ZeroLeadingTerm,
    #[error("coefficient of q^{exp} requested but the series is only known below q^{order}")]
    BeyondTruncation { exp: i64, order: i64 },
    #[error("operation requires a power series, found minimum exponent {min_exp}")]
    NegativeExponent { min_exp: i64 },
    #[error("geometric expansion 1/(1 - q^e) needs e != 0")]
    ZeroExponent,
    #[error("bilateral sum term n = {n} has a vanishing denominator")]
    PoleHit { n: i64 },
    #[error("enumeration of n = {n} exceeds the cap of {cap}")]
    CapExceeded { n: u32, cap: u32 },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
