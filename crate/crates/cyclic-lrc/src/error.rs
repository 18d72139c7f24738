use thiserror::Error;

/// Errors reported by the construction, verification, and search routines.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{m} exceeds the supported maximum of 2^20")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no field of order <= 2^20 has order congruent to 1 mod {0}")]
    NoFieldInRange(u64),
    #[error("{n} does not divide q - 1 = {qm1}")]
    NoRootOfUnity { n: u64, qm1: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("component length {0} is too small (minimum 2)")]
    LengthTooSmall(u64),
    #[error("component lengths {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("parameter vectors have mismatched lengths")]
    ParamShape,
    #[error("rho[{i}] = {rho} is outside 2..={n_i}")]
    RhoOutOfRange { i: usize, rho: u64, n_i: u64 },
    #[error("offset b[{i}] = {b} is not coprime to n_{i} = {n_i}")]
    OffsetNotUnit { i: usize, b: u64, n_i: u64 },
    #[error("exponent {e} is outside 0..{n}")]
    ExponentOutOfRange { e: u64, n: u64 },
    #[error("field order {q} is incompatible with length {n}: n must divide q - 1")]
    FieldLengthMismatch { q: u64, n: u64 },
    #[error("partition index {0} is out of range")]
    PartitionIndex(usize),
    #[error("expected {expected} symbols, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("position {0} is out of range")]
    PositionOutOfRange(usize),
    #[error("duplicate position {0}")]
    DuplicatePosition(usize),
    #[error("empty position set")]
    EmptyPositions,
    #[error("partition does not cover the position range exactly once")]
    MalformedPartition,
    #[error("group {group} of partition {partition} has {count} erasures; at most {max} are repairable")]
    TooManyErasures {
        partition: usize,
        group: usize,
        count: usize,
        max: usize,
    },
    #[error("erased positions cannot be determined uniquely")]
    AmbiguousRepair,
    #[error("known symbols are inconsistent with the code")]
    InconsistentWord,
    #[error("search requires a base construction with an empty global exponent set")]
    SearchBaseNotEmpty,
    #[error("requested set size {m} exceeds the {available} available exponents")]
    SearchSizeTooLarge { m: usize, available: usize },
    #[error("search space of {candidates} candidates exceeds the cap of {cap}")]
    SearchSpaceTooLarge { candidates: u128, cap: u64 },
    #[error("invalid bound arguments: {0}")]
    InvalidBoundArgs(String),
}

pub type Result<T> = std::result::Result<T, Error>;
