use thiserror::Error;

/// Errors raised by the geometry kernels and the expression front end.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("eigensolver did not converge (off-diagonal residual {residual:.3e})")]
    NoConvergence { residual: f64 },

    /// An eigenphase sits on the principal-branch cut of the matrix
    /// logarithm; the caller must perturb the input.
    #[error("matrix logarithm branch ambiguity: eigenphase {phase} is within tolerance of -pi")]
    BranchAmbiguity { phase: f64 },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("domain violation in {node}: argument {value}")]
    Domain { node: &'static str, value: f64 },

    #[error("point has {got} coordinates, expected {expected}")]
    PointDim { expected: usize, got: usize },

    #[error("invalid feature map: {0}")]
    InvalidSpec(String),

    #[error("invalid manifold: {0}")]
    InvalidManifold(String),

    #[error("Gram-Schmidt dropped every input vector")]
    EmptyFrame,

    #[error("tangent vectors do not share a base point")]
    MixedBasePoints,

    #[error("sectional curvature of a degenerate pair (denominator {denominator:.3e})")]
    DegeneratePair { denominator: f64 },

    #[error("operator leaves the span of the basis (string {string})")]
    NotInSpan { string: String },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
