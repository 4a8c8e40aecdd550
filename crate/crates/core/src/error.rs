use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} samples, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("envelopes or profiles live on different time grids")]
    GridMismatch,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid value for `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("input envelope is not normalized (squared norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("time grid [{start}, {end}] too narrow: pulse requires at least [{required_start}, {required_end}]")]
    WindowTooNarrow {
        start: f64,
        end: f64,
        required_start: f64,
        required_end: f64,
    },

    #[error("envelope has zero norm")]
    ZeroNorm,

    #[error("shifted support leaves the grid (lost fraction {lost:e} of the squared norm)")]
    SupportClipped { lost: f64 },

    #[error("ODE integration unstable at sample {index} (|s1| = {value}); refine the grid")]
    OdeUnstable { index: usize, value: f64 },

    #[error("efficiency search did not converge in {iterations} iterations (bracket [{lo}, {hi}])")]
    NoFixedPoint { lo: f64, hi: f64, iterations: usize },

    #[error("efficiency {eta} outside admissible range (0, {max}]")]
    InadmissibleEfficiency { eta: f64, max: f64 },

    #[error("decay rate {value} at sample {index} outside [{min}, {max}]")]
    RateOutOfRange {
        index: usize,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("read stage started from P0 = {p0}, but write efficiency is {eta_w}")]
    InconsistentP0 { p0: f64, eta_w: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
