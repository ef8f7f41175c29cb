//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Dense-path guard: the full Hilbert space is too large to materialize.
    #[error("dense Hilbert space dimension {dim} exceeds the cap {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    /// Tensor or operator dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// String operators support integer charge shifts only.
    #[error("unsupported exponent: alpha2 = {0} is not an integer charge shift")]
    UnsupportedExponent(f64),

    /// Iterative eigensolver failed to reach the requested residual.
    #[error("eigensolver did not converge: residual {residual:.3e}")]
    NonConvergence { residual: f64 },

    /// The regression design matrix is singular or underdetermined.
    #[error("singular fit: {0}")]
    SingularFit(String),

    /// Power-law window contains sign-alternating data.
    #[error(
        "sign-alternating correlator data in the fit window; \
         use connected correlators or move the window"
    )]
    SignAlternating,

    /// Correlator curvature indicates exponential decay, not algebraic.
    #[error("correlator appears gapped (exponential decay); cannot extract a vertex dimension")]
    GappedPhase,

    /// A sweep found no transition bracket; the c-vs-coupling table is attached.
    #[error("no transition in range; {} points scanned", table.len())]
    NoTransition { table: Vec<(f64, f64)> },

    /// Plane scans need at least a 2x2 grid.
    #[error("need 2D plane: {0}")]
    DegeneratePlane(String),

    /// The boundary-field experiment requires an open chain.
    #[error("periodic boundary rejected: the boundary-field protocol requires an open chain")]
    PeriodicBoundaryRejected,

    /// Corrupt or incompatible checkpoint file.
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    /// Configuration file problem.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Linalg(#[from] ndarray_linalg::error::LinalgError),
}
