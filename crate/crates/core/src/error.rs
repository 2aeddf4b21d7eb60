use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedMap(String),

    #[error("maps do not compose: {0}")]
    IncompatibleMaps(String),

    #[error("element is not in the subgroup")]
    NotInSubgroup,

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("stage {stage} out of range 1..={horizon}")]
    StageOutOfRange { stage: usize, horizon: usize },

    #[error("levelwise sequence is not exact at stage {stage}: {reason}")]
    NotExact { stage: usize, reason: String },

    #[error("square at stage {stage} does not commute")]
    NotCommuting { stage: usize },

    #[error("moduli do not form a divisibility chain: {0} does not divide {1}")]
    BadModuli(BigInt, BigInt),

    #[error("incompatible residues at stage {stage}")]
    IncompatibleResidues { stage: usize },

    #[error("invalid prime window: {0}")]
    InvalidWindow(String),

    #[error("invalid Prüfer coordinate: {0}")]
    InvalidCoordinate(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("window of {window} primes is too small for m = {m}")]
    WindowTooSmall { window: usize, m: usize },

    #[error("independent computations disagree at n = {n}, k = {k}: {direct} vs {oracle}")]
    OracleMismatch {
        n: usize,
        k: usize,
        direct: BigInt,
        oracle: BigInt,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
