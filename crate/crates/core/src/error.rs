use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands live in different group contexts")]
    ContextMismatch,
    #[error("invalid group context: {0}")]
    InvalidContext(String),
    #[error("operation requires {required} mode")]
    UnsupportedMode { required: &'static str },
    #[error("modulus {0} is even; 2 must be invertible")]
    EvenModulus(u64),
    #[error("degenerate bicharacter: {0}")]
    Degenerate(&'static str),
    #[error("singular linear map: {0}")]
    Singular(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("window radius {radius} smaller than support radius {support}")]
    WindowTooSmall { radius: usize, support: usize },
    #[error("iterative norm estimate did not converge after {iterations} operator applications (last estimate {estimate})")]
    NoConvergence { iterations: usize, estimate: f64 },
    #[error("window estimates decreased at radius {radius}: {previous} then {estimate}")]
    NotMonotone { radius: usize, previous: f64, estimate: f64 },
    #[error("operands are sampled on different base grids")]
    GridMismatch,
    #[error("precondition failed: {0}")]
    Precondition(String),
}
