use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by state constructors, basis operations and detectors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}; must be at least 1")]
    InvalidDimension(usize),

    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        expected: usize,
        actual: usize,
        context: &'static str,
    },

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("rotation is not orthogonal (max deviation {0:.3e})")]
    NotOrthogonal(f64),

    #[error("trace is {0}, expected 1 within tolerance")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("Schmidt coefficients are not normalized (sum of squares {0})")]
    NotNormalized(f64),

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("unsupported dimension {dim}; supported dimensions: {supported}")]
    UnsupportedDimension { dim: usize, supported: &'static str },

    #[error("design verification failed at construction: {0}")]
    DesignVerification(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("correlation entries are not real (max imaginary residue {0:.3e})")]
    NonRealCorrelation(f64),

    #[error(
        "corner entry {found} deviates from 1/sqrt(dA*dB) = {expected}; \
         the correlation matrix was not built from identity-first bases"
    )]
    NotIdentityFirst { found: f64, expected: f64 },

    #[error("theorem hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("the discord measure is undefined for p = infinity")]
    InfinitePUnsupported,

    #[error(
        "negative discord {0:.3e} beyond tolerance; \
         a measurement increased a singular value of the correlation matrix"
    )]
    NegativeDiscord(f64),
}
