use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero scalar")]
    DivisionByZero,

    #[error("denominator of {scalar} vanishes under the given bindings")]
    SpecializationPole { scalar: String },

    #[error("differentiator identity needs order r >= 2, got {0}")]
    InvalidOrder(u32),

    #[error("no annihilating differentiator of order <= {m_max}")]
    NotFound { m_max: u32 },

    #[error("invalid jet representation: {0}")]
    InvalidRep(String),

    #[error("polynomial fit of degree <= {degree_cap} disagrees with samples at {point}")]
    FitMismatch { degree_cap: u32, point: String },

    #[error("weight-space rank did not stabilize up to evaluation window {cap}")]
    RankUnstable { cap: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
