use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("conductor {from} does not divide {to}")]
    ConductorNotDivisible { from: u32, to: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("constant vector has no component in the standard subspace")]
    ConstantVector,

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("degree {n} exceeds the limit {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not {property} (residual {residual:e})")]
    MatrixProperty {
        property: &'static str,
        residual: f64,
    },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid observation schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid weight scheme: {0}")]
    InvalidWeights(String),

    #[error("zero-probability step at transition {0}")]
    ZeroProbability(usize),

    #[error("invalid Lagrangian inputs: {0}")]
    InvalidLagrangian(String),

    #[error("parse error: {0}")]
    Parse(String),
}
