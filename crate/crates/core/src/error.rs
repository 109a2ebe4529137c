use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e}, allowed {allowed:.3e})")]
    NotHermitian { defect: f64, allowed: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:.3e}, clip tolerance {clip_tol:.3e})")]
    NotPsd { min_eig: f64, clip_tol: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry in matrix")]
    NonFinite,

    #[error("bad norm parameter: {0}")]
    BadNormParam(String),

    #[error("bad index: {0}")]
    BadIndex(String),

    #[error("bad argument: {0}")]
    BadArgument(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
