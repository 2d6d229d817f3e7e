use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FourierError {
    #[error("grid size must be at least 1, got {0}")]
    EmptyGrid(usize),
    #[error("expected {expected} grid values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("grid functions live on different grids (n = {left} vs n = {right})")]
    GridMismatch { left: usize, right: usize },
    #[error("{what} index {index} is outside -{n}..={last}", last = *n as i64 - 1)]
    IndexOutOfRange { what: &'static str, index: i64, n: usize },
    #[error("function `{name}` evaluated to a non-finite value at x = {x}")]
    NonFinite { name: String, x: f64 },
    #[error("function `{0}` has no closed-form coefficients")]
    NoExactCoefficients(String),
    #[error("the zero mode is excluded: psi_n(0) vanishes")]
    ZeroMode,
    #[error("tail range {lo}..={hi} must be ordered, non-empty and of one sign")]
    BadTailRange { lo: i64, hi: i64 },
    #[error("function `{name}` does not vanish at both endpoints (|f(-1)| = {left:e}, |f(1)| = {right:e})")]
    NonZeroEndpoints { name: String, left: f64, right: f64 },
    #[error("function `{name}` is not periodic: f(a) and f(b) differ by {gap:e}")]
    NotPeriodic { name: String, gap: f64 },
    #[error("interval [{a}, {b}] is empty")]
    EmptyInterval { a: f64, b: f64 },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = FourierError> = std::result::Result<T, E>;
