use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve limit must be at least 2, got {0}")]
    SieveLimit(u64),
    #[error("{0} is outside the range covered by the sieve (limit {1})")]
    OutsideSieve(u64, u64),
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("q-series bounds differ: {0} vs {1}")]
    BoundMismatch(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("prime {p} has bad reduction on curve {curve}")]
    BadReduction { p: u64, curve: String },
    #[error("prime {p} divides the level {level} of {label}")]
    RamifiedPrime { p: u64, level: u64, label: String },
    #[error("{label}: prime {p} is not covered by the table (bound {bound})")]
    NotInTable { label: String, p: u64, bound: u64 },
    #[error("{label}: source exhausted, requested primes up to {requested} but only {available} are available")]
    SourceExhausted { label: String, requested: u64, available: u64 },
    #[error("{label}: Deligne bound violated at p = {p} (lambda = {lambda})")]
    DeligneViolation { label: String, p: u64, lambda: f64 },
    #[error("normalized eigenvalue {0} lies outside [-2, 2]")]
    EigenvalueOutOfRange(f64),
    #[error("angle {0} is degenerate (0 or pi)")]
    DegenerateAngle(f64),
    #[error("nu must be odd, got {0}")]
    EvenNu(u32),
    #[error("missing coefficient at index {0}")]
    MissingCoefficient(u64),
    #[error("cache miss for {0} and building is disabled")]
    CacheMiss(String),
    #[error("malformed table file {path}: {reason}")]
    MalformedTable { path: PathBuf, reason: String },
    #[error("unknown form label {0:?}")]
    UnknownForm(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
