use thiserror::Error;

/// Errors produced by sequence construction, product evaluation, quadrature
/// and the theorem harnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("evaluation domain exceeded: |z| = {modulus} > {limit}")]
    OutsideDomain { modulus: f64, limit: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("perturbation collision: two perturbed points coincide at {0}")]
    Collision(String),

    #[error("perturbation undefined at base point {0}")]
    UndefinedPerturbation(String),

    #[error("wrong family: expected {expected}, found {found}")]
    WrongFamily { expected: String, found: String },

    #[error("empty point set")]
    EmptySet,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by evaluating outside a valid numerical domain.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::OutsideDomain { .. } | Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
