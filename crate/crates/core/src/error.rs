use thiserror::Error;

/// Errors surfaced by the library. Input errors mean the caller gave us
/// something malformed; capability errors mean the request is beyond the
/// configured desk-scale limits.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truth table length mismatch for n={n}: expected {expected} bits, got {actual}")]
    TableLength { n: u32, expected: u64, actual: u64 },

    #[error("invalid truth table character {ch:?} at position {pos}")]
    TableChar { ch: char, pos: usize },

    #[error("dimension n={n} exceeds the limit {limit} for {op}")]
    DimensionTooLarge {
        op: &'static str,
        n: u32,
        limit: u32,
    },

    #[error("coordinate {i} out of range 1..={n}")]
    CoordinateOutOfRange { i: u32, n: u32 },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),

    #[error("work budget exceeded for {op}: {detail}")]
    BudgetExceeded { op: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
