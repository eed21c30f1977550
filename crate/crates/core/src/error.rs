use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least {min}, got {got}")]
    InvalidDimension { got: usize, min: usize },

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("vector is not normalized (|norm² - 1| = {deviation:e})")]
    NotNormalized { deviation: f64 },

    #[error("shift {shift} outside [0, {d})")]
    ShiftOutOfRange { shift: usize, d: usize },

    #[error("label ({m}, {n}) outside [0, {d})²")]
    LabelOutOfRange { m: usize, n: usize, d: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("{name} = {value} outside [{lo}, {hi}]")]
    ParameterOutOfRange { name: &'static str, value: f64, lo: f64, hi: f64 },

    #[error("no tabulated phases for d = {d}, variant = {variant}")]
    UnknownTableRow { d: usize, variant: usize },

    #[error("reduced state has eigenvalue {value:e} below zero")]
    NegativeEigenvalue { value: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),
}
