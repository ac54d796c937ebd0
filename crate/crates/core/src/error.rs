use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by state construction, channel application, and the
/// Monte Carlo machinery.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside its mathematical domain (negative occupation,
    /// transmittance outside [0, 1], zero trial count, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A covariance matrix violates the physicality bound
    /// (symplectic eigenvalue below 1/2).
    #[error("unphysical state: {0}")]
    Unphysical(String),

    /// The operation is valid in general but not for this configuration.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfig(String),

    /// An alphabet whose symbols produce indistinguishable correlations.
    #[error("degenerate alphabet: {0}")]
    DegenerateAlphabet(String),

    /// Numerical failure, e.g. a covariance factorization that stays
    /// indefinite after jitter regularization.
    #[error("numeric error: {0}")]
    Numeric(String),
}
