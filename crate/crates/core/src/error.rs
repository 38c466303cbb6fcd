use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix contains a non-finite entry")]
    NonFiniteEntry,

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    ConvergenceFailure { sweeps: usize, off_norm: f64 },

    #[error("no connected graph after {attempts} consecutive draws")]
    ConnectivityExhausted { attempts: usize },

    #[error("vertex {vertex} has zero degree")]
    ZeroDegreeVertex { vertex: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("whitening is singular: eigenvalue {index} is zero and sigma_hat is zero")]
    SingularWhitening { index: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("class {class} has no training samples")]
    EmptyClass { class: usize },

    #[error("covariance matrix is singular or not positive definite")]
    SingularCovariance,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("empty input")]
    EmptyInput,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
