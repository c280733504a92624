use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arithmetic overflow in checked 64-bit mode")]
    ArithmeticOverflow,
    #[error("polyhedron is infeasible")]
    InfeasiblePolyhedron,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("constraint normal must be nonzero")]
    ZeroNormal,
    #[error("invalid index pair ({0}, {1})")]
    InvalidIndexPair(usize, usize),
    #[error("quadruple must consist of four distinct bodies")]
    InvalidQuadruple,
    #[error("unsupported body count {0}: need n >= 3")]
    UnsupportedBodyCount(usize),
    #[error("the zero coefficient has no valuation")]
    ZeroCoefficient,
    #[error("mass valuations must be pairwise distinct (pass --unsafe-valuations to override)")]
    DistinctValuationsRequired,
    #[error("tropical polynomial {0} has fewer than 2 terms: its hypersurface is empty")]
    EmptyHypersurface(String),
    #[error("oracle limits exceeded: {0}")]
    OracleTooLarge(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
