use alloc::string::String;

use crate::geometry::SpatialPoint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite integrand value at quadrature node {index} ({point})")]
    NonFinite { index: usize, point: SpatialPoint },

    #[error("|omega| = {modulus:e} below floor {floor:e} at {point}; manufactured triple would be singular")]
    SingularTriple {
        modulus: f64,
        floor: f64,
        point: SpatialPoint,
    },

    #[error("vanishing boundary mass at r = {radius}: Phi(r) = {phi:e}")]
    VanishingBoundaryMass { radius: f64, phi: f64 },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
