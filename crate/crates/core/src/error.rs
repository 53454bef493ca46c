use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the number-theoretic layer and the schemes built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// `value` has no inverse modulo `modulus`. For a Rabin modulus the gcd is a prime factor.
    #[error("{value} is not invertible modulo {modulus} (gcd {gcd})")]
    NotInvertible {
        value: BigInt,
        modulus: BigInt,
        gcd: BigInt,
    },

    #[error("invalid modulus {0}: must be odd and positive")]
    InvalidModulus(BigInt),

    #[error("{value} is not a quadratic residue modulo {modulus}")]
    NonResidue { value: BigInt, modulus: BigInt },

    /// The input is not a unit modulo N; the shared factor is attached.
    #[error("input shares the factor {gcd} with the modulus")]
    SharedFactor { gcd: BigInt },

    #[error("{h} and {k} are not coprime")]
    NotCoprime { h: BigInt, k: BigInt },

    #[error("message {0} is outside [1, N)")]
    OutOfRange(BigInt),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operation requires a Blum key (p and q both congruent to 3 mod 4)")]
    WrongKeyClass,

    #[error("integrity check failed: {0}")]
    Integrity(&'static str),

    #[error("trivial root pair: gcd with the modulus is 1 or N")]
    TrivialPair,

    #[error("modulus {n} exceeds the desk-scale limit {limit}")]
    ScaleLimit { n: BigInt, limit: u64 },
}

impl Error {
    pub fn is_integrity(&self) -> bool {
        matches!(self, Error::Integrity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
