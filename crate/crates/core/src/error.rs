use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpinlabError {
    #[error("unsupported Clifford dimension {0} (expected 2, 3 or 4)")]
    UnsupportedDimension(usize),
    #[error("operation requires an even-dimensional model, got dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not an orthogonal complex structure (residual {0:.3e})")]
    NotComplexStructure(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("endomorphism is not symmetric (asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("point {point:?} lies outside the chart domain of a factor with curvature {curvature}")]
    OutsideChart { point: [f64; 2], curvature: f64 },
    #[error("differential has rank < 3 at u = {0:?}")]
    RankDeficient([f64; 3]),
    #[error("spinor norm {0:.3e} is degenerate")]
    DegenerateSpinor(f64),
    #[error("tangent vectors are based at different points")]
    MismatchedBasePoints,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("expression parse error: {0}")]
    Expression(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = SpinlabError> = std::result::Result<T, E>;
