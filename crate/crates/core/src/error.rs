use thiserror::Error;

/// Errors raised by the library. The CLI maps [`Error::is_usage`] errors to
/// exit code 2 and everything else to exit code 3.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term must equal 1 (got {re} + {im}i)")]
    ConstantTermNotOne { re: f64, im: f64 },

    #[error("function is not normalized: need f(0) = 0 and f'(0) = 1")]
    NotNormalized,

    #[error("insufficient order: {what} requires order at least {required}, got {actual}")]
    InsufficientOrder {
        what: &'static str,
        required: usize,
        actual: usize,
    },

    #[error("Grunsky entry w[{p},{q}] is not stored (max total degree {max_degree})")]
    MissingEntry {
        p: usize,
        q: usize,
        max_degree: usize,
    },

    #[error("weights must be supported on odd indices, got index {0}")]
    EvenWeightIndex(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("objective is not finite at t = {abscissa}")]
    NonFinite { abscissa: f64 },

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("unknown objective `{0}`")]
    UnknownObjective(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

impl Error {
    /// Errors caused by how the caller named things rather than by the
    /// mathematical content of the input.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::UnknownObjective(_) | Error::UnknownFamily(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
