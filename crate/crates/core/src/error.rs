use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate lattice: determinant is 0")]
    Degenerate,

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("dimension {0} is unsupported; standard masses are tabulated for rank 8 only")]
    DimensionUnsupported(usize),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("matrix is not an isometry of the given form")]
    NotIsometry,

    #[error("sublattice is not saturated (index {0})")]
    NotSaturated(String),

    #[error("map is not an anti-isometry: {0}")]
    NotAntiIsometry(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
