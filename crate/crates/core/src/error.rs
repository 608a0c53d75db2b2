use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("unknown face {0}")]
    UnknownFace(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: isize, found: isize },

    #[error("dimension {dim} out of range {min}..={max}")]
    DimensionOutOfRange { dim: isize, min: isize, max: isize },

    #[error("weight of face {face} is not positive ({value})")]
    NonPositiveWeight { face: String, value: f64 },

    #[error("weights are not normalized; operation requires the normalized regime")]
    NotNormalized,

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("not an {dim}-motif: {reason}")]
    NotAMotif { dim: isize, reason: String },

    #[error("vertex sets overlap at {0}")]
    OverlappingVertices(String),

    #[error("invalid face bijection: {0}")]
    InvalidBijection(String),

    #[error("unknown graph vertex {0}")]
    UnknownGraphVertex(usize),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("matrix is not symmetric (defect {0:e})")]
    NotSymmetric(f64),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    /// True for failures that indicate a numerical or logic fault rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotSymmetric(_) | Error::NoConvergence { .. } | Error::InternalConsistency(_)
        )
    }
}
