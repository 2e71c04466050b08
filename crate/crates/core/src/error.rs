use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("not divisible by p")]
    NotDivisibleByP,
    #[error("Frobenius congruence violated")]
    FrobeniusViolated,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator {denominator} is divisible by p = {p}")]
    DenominatorNotUnit { denominator: String, p: u64 },
    #[error("modulus {p}^{m} is not supported")]
    UnsupportedModulus { p: u64, m: u32 },
    #[error("mismatched coefficient rings")]
    RingMismatch,
    #[error("no torsion bound")]
    NoTorsionBound,
    #[error("instance too large for oracle")]
    OracleTooLarge,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
