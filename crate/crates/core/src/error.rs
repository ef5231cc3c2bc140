use thiserror::Error;

/// Errors raised by the constructors and checks in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("hbar must be positive and finite, got {0}")]
    NonPositiveHbar(f64),

    #[error("wave functions carry different hbar values ({left} vs {right})")]
    HbarMismatch { left: f64, right: f64 },

    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("phase-space area a*b/h = {ratio} is not an integer; the geometry is not quantized")]
    NotQuantized { ratio: f64 },

    #[error("grid size {size} is not a positive multiple of N = {n}")]
    BadGridSize { size: usize, n: u64 },

    #[error("grids do not match (geometry or size differ)")]
    GridMismatch,

    #[error("chart overlap half-width {delta} must lie in (0, b/4) with b = {b}")]
    BadOverlap { delta: f64, b: f64 },

    #[error("dimension must be at least 1, got {0}")]
    BadDimension(i64),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("displacement phase must have unit modulus, |phase| = {0}")]
    NonUnitPhase(f64),

    #[error("clock/shift commutator is not a scalar multiple (residual {0:e})")]
    NonScalarCommutator(f64),

    #[error("malformed value: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
