use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid domain data (radii, exponents, flags out of range).
    #[error("invalid domain: {0}")]
    Domain(String),

    /// A series hit its term cap before meeting the termination criterion.
    #[error("series did not converge within {n_max} terms (last term {last_term:e})")]
    Convergence { n_max: usize, last_term: f64 },

    /// Evaluation point on or outside the ring.
    #[error("point out of domain: {0}")]
    OutOfDomain(String),

    /// A provable inequality failed numerically; signals corrupted input
    /// or an implementation bug, not a user error.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    /// Oracle parameters outside the validated envelope.
    #[error("oracle envelope violated: {0}")]
    Envelope(String),

    /// Cholesky factorization failed; the quadrature is too coarse or the
    /// reduced system is numerically indefinite.
    #[error("quadrature too coarse: Cholesky failed at pivot {pivot}")]
    Quadrature { pivot: usize },

    /// The Zalcman constructor exhausted its candidate budget.
    #[error("construction failed at stage {stage}: {reason}")]
    Construction { stage: usize, reason: String },

    /// Degenerate input to a report-style check.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
