use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("region is not bounded")]
    UnboundedRegion,

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("fan mismatch between sheaves")]
    FanMismatch,

    #[error("unknown ray index {0}")]
    UnknownRay(usize),

    #[error("torus coordinate {0} is zero")]
    ZeroCoordinate(usize),

    #[error("variable {0} is not covered by the assignment")]
    UncoveredVariable(String),

    #[error("term of degree {0} is not a homogeneous pre-Higgs field")]
    InvalidTerm(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty polytope")]
    EmptyPolytope,
}

pub type Result<T> = std::result::Result<T, Error>;
