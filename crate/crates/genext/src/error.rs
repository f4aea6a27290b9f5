use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-polynomial shift: order {order} is smaller than the shift {shift}")]
    NonPolynomialShift { order: usize, shift: usize },

    #[error("order of the zero series is undefined")]
    OrderUndefined,

    #[error("non-exact division: remainder {remainder}")]
    NonExactDivision { remainder: String },

    #[error("{what}: index {index} out of range")]
    IndexOutOfRange { what: &'static str, index: u64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("{0} is not an odd prime in the supported range")]
    NotPrime(u64),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("conjecture inconsistent at (n, d) = ({n}, {d}): {detail}")]
    ConjectureInconsistent { n: u32, d: u32, detail: String },

    #[error("conjecture fails at n = {n}: {detail}")]
    ConjectureFails { n: u32, detail: String },

    #[error("anomaly: {0}")]
    Anomaly(String),

    #[error("empty series list")]
    EmptyList,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
