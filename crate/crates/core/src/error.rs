use thiserror::Error;

use crate::biframes::Classification;
use crate::linalg::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operator is not Hermitian: deviation {deviation:.3e} exceeds {threshold:.3e}")]
    NotHermitian { deviation: f64, threshold: f64 },

    #[error("operator is not positive definite: smallest eigenvalue {min_eigenvalue:.6e} inside zero band {band:.3e}")]
    NotPositiveDefinite { min_eigenvalue: f64, band: f64 },

    #[error("operator is singular: smallest singular value {min_singular_value:.3e} <= {threshold:.3e}")]
    Singular { min_singular_value: f64, threshold: f64 },

    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("family is not a frame: smallest frame-operator eigenvalue {min_eigenvalue:.6e}")]
    NotAFrame { min_eigenvalue: f64 },

    #[error("pair is not a biframe (classified as {classification})")]
    NotABiframe { classification: Classification },

    #[error("family is not a Riesz basis")]
    NotARieszBasis,

    #[error("family is not an orthonormal basis: Gram deviation {deviation:.3e}")]
    NotOrthonormal { deviation: f64 },

    #[error("coupling T W* != I: deviation {deviation:.3e}")]
    BadCoupling { deviation: f64 },

    #[error("invalid exponents: {0}")]
    InvalidExponents(String),

    #[error("membership of the family in the class of {which} is not established")]
    MembershipNotEstablished { which: &'static str },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
