use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("torus rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("generators are linearly dependent over the reals (residual {residual:.3e})")]
    DependentGenerators { residual: f64 },

    #[error("point is not on the zero level: {0}")]
    NotOnZeroLevel(String),

    #[error("point lies on the zero level; use the diagonal experiment instead")]
    OnZeroLevel,

    #[error("zero vector has no image in projective space")]
    ZeroVector,

    #[error("infinite stabilizer: constraint lattice has rank {rank} < torus rank {torus_rank}")]
    InfiniteStabilizer { rank: usize, torus_rank: usize },

    #[error("element does not stabilize the point: fiber multipliers disagree by {spread:.3e}")]
    NotInStabilizer { spread: f64 },

    #[error("malformed stabilizer: {0}")]
    MalformedStabilizer(String),

    #[error("frame mismatch between tangent splits")]
    FrameMismatch,

    #[error("multi-index degree {got} does not equal level {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("enumeration over {dim} coordinates is too large; use the quadrature path")]
    EnumerationTooLarge { dim: usize },

    #[error("quadrature did not converge at {nodes} nodes: last iterates {previous} and {last}")]
    QuadratureNotConverged {
        nodes: usize,
        previous: num_complex::Complex64,
        last: num_complex::Complex64,
    },

    #[error("chart displacement {norm:.4} exceeds chart radius {radius}")]
    OutsideChart { norm: f64, radius: f64 },

    #[error("preferred frame verification failed: {0}")]
    FrameVerification(String),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("no levels in the schedule survive the selection filter")]
    EmptySchedule,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
