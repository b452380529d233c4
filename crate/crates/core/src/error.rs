use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("vector is not unit norm (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("unsupported qubit count {0}; expected 2 or 3")]
    QubitCount(usize),

    #[error("observables are not orthogonal: (a, a') = {inner:e}")]
    NotOrthogonal { inner: f64 },

    #[error("frame consistency check failed (residual {residual:e})")]
    FrameInconsistent { residual: f64 },

    #[error("state does not maximally violate: <B> = {value} < {required}")]
    NotMaximal { value: f64, required: f64 },

    #[error("state is not of the two-term frame form (cross-term amplitude {cross:e})")]
    NotFrameForm { cross: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
