use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::Factorization;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0}: argument must be positive")]
    ZeroArgument(&'static str),
    #[error("largest prime divisor of {0} is undefined")]
    NoPrimeDivisor(u64),
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("invalid triple (a={a}, b={b}, n={n}): {reason}")]
    InvalidTriple {
        a: BigUint,
        b: BigUint,
        n: u64,
        reason: &'static str,
    },
    #[error("index n={n} is below the minimum {min} for {op}")]
    IndexTooSmall { op: &'static str, n: u64, min: u64 },
    #[error("lifting-the-exponent precondition failed: {0}")]
    LtePrecondition(&'static str),
    #[error("prime {p} divides a*b")]
    PrimeDividesBase { p: BigUint },
    #[error("prime {p} does not divide the cyclotomic value")]
    NotADivisor { p: BigUint },
    #[error("cyclotomic coefficient exceeds 64 bits")]
    CoefficientOverflow,
    #[error("prime {p} dividing Phi_{n} fits no prime-divisor case")]
    Unclassifiable { p: BigUint, n: u64 },
    #[error("non-exact division while evaluating Phi_{n}")]
    InexactDivision { n: u64 },
    #[error("factorization of {} exhausted its budget", .partial.value())]
    IncompleteFactorization { partial: Box<Factorization> },
}
