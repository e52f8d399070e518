use thiserror::Error;

pub type Result<T> = std::result::Result<T, BeltwayError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BeltwayError {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid signal: {0}")]
    InvalidSignal(String),
    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{points} points do not fit the triangular reduction in dimension {dim}")]
    Dimension { points: usize, dim: usize },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("numerical rank {rank} exceeds the ambient dimension {dim}")]
    RankExceeded { rank: usize, dim: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no real solution for the last coordinate (residual {residual:e})")]
    NoRealSolution { residual: f64 },
    #[error("partner is orthogonally equivalent to the input")]
    DegeneratePartner,
    #[error("support is not collision-free")]
    NotCollisionFree,
    #[error("support is not radially collision-free")]
    NotRadiallyCollisionFree,
    #[error("inconsistent weights: {0}")]
    InconsistentWeights(String),
    #[error("pairwise weight products are not distinct")]
    WeightProductsNotDistinct,
    #[error("enumeration budget of {cap} nodes exceeded")]
    BudgetExceeded { cap: u64 },
    #[error("malformed invariant set: {0}")]
    MalformedInvariants(String),
    #[error("scale {scale} is below the largest pairwise difference {diameter}")]
    Scale { scale: f64, diameter: f64 },
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for BeltwayError {
    fn from(err: std::io::Error) -> Self {
        BeltwayError::Io(err.to_string())
    }
}
