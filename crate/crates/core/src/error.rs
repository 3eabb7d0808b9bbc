use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is too large")]
    ModulusTooLarge(u32),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("pairing is degenerate")]
    DegeneratePairing,
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("result is not stable under increasing precision: {0}")]
    Instability(String),
    #[error("no ideal class matches {0}")]
    NoClassMatch(String),
    #[error("Ratliff-Rush chain did not stabilize by n = {0}")]
    NotStabilized(usize),
    #[error("annihilator is infinite: {0}")]
    InfiniteAnnihilator(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("not a submodule: {0}")]
    NotSubmodule(String),
    #[error("lattice is not closed under the operation: {0}")]
    LatticeNotClosed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
