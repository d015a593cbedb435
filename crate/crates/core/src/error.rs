use thiserror::Error;

/// Errors raised when an input violates an operation's preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires N = {required}, got N = {found}")]
    UnsupportedDimension { required: usize, found: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("real chart needs an even, nonzero number of coordinates, got {0}")]
    OddCoordinates(usize),

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not anti-Hermitian (residual {residual:e})")]
    NotAntiHermitian { residual: f64 },

    #[error("tensor does not have the declared symmetry (residual {residual:e})")]
    SymmetryMismatch { residual: f64 },

    #[error("expected a {expected} tensor, got a {found} one")]
    VarianceMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("the zero vector has no image on the projective space")]
    ZeroVector,

    #[error("operation requires a unit vector, got squared norm {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("complement vectors are not orthonormal and orthogonal to z (residual {residual:e})")]
    BadComplement { residual: f64 },

    #[error("point is not on the Bloch sphere of radius 1/2 (|y|^2 = {norm_sq})")]
    OffSphere { norm_sq: f64 },

    #[error("tensor could not be inverted on the orbit frame")]
    Degenerate,
}

pub type Result<T> = std::result::Result<T, Error>;
