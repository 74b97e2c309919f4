use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("singular Weierstrass equation (discriminant is zero)")]
    Singular,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} is not allowed here: {reason}")]
    BadPrime { p: u64, reason: &'static str },
    #[error("not enough good primes: needed {needed}, got {got}")]
    InsufficientPrimes { needed: usize, got: usize },
    #[error("trace vectors use different prime windows")]
    WindowMismatch,
    #[error("isogeny of degree {n} does not give a criterion at p = {p}")]
    IsogenyDegreeDivisibleByP { n: u64, p: u64 },
    #[error("curve has no rational {0}-isogeny")]
    NoRationalIsogeny(u64),
    #[error("curve has j-invariant {0}, which this operation does not handle")]
    UnsupportedJ(String),
    #[error("twist class excluded: {0}")]
    ExcludedTwist(&'static str),
    #[error("residual representation is reducible")]
    Reducible,
    #[error("residual representation is irreducible")]
    Irreducible,
    #[error("degenerate isogeny field: {0}")]
    DegenerateField(&'static str),
    #[error("inconsistent isogeny characters: {0}")]
    CharacterMismatch(String),
    #[error("no quadratic character witnesses the dihedral image")]
    NoDihedralWitness,
    #[error("criteria disagree: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
