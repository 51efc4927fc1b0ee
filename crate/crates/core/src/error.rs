use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational arithmetic overflowed 64-bit storage")]
    Overflow,

    #[error("cannot parse {text:?} as a rational: {reason}")]
    Parse { text: String, reason: String },

    #[error("{channel}: invalid probability distribution: {reason}")]
    InvalidDistribution { channel: String, reason: String },

    #[error("{origin}:{line}:{column}: {message}")]
    Format { origin: String, line: usize, column: usize, message: String },

    #[error("prior {0} is outside [0, 1]")]
    PriorOutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("function is not concave (chord slopes increase at p = {at})")]
    NotConcave { at: String },

    #[error("maximum plateau [{lo}, {hi}] gives conflicting case patterns")]
    AmbiguousPlateau { lo: String, hi: String },

    #[error(
        "{count} eigenstate curves meet at p = {at} with mixed slopes; candidate states are not known to be unique"
    )]
    ThreeWayCrossing { at: String, count: usize, candidates: Vec<crate::risk::BlochVector> },

    #[error("crossing at p = {at} admits no valid input state: {reason}")]
    InconsistentCrossing { at: String, reason: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge in {0} sweeps")]
    NoConvergence(usize),

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("eigenvalue {0} does not have unit modulus")]
    NonUnitModulus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
