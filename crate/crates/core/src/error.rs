use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("coefficient domains differ ({0} vs {1}); promote explicitly")]
    DomainMismatch(&'static str, &'static str),
    #[error("series is not invertible: leading coefficient is zero")]
    NonInvertible,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("multiplier e^(2 pi i {0}) is not representable in the exact domain; promote to complex first")]
    DomainPromotionRequired(Rational),
    #[error("tau = {0} is not in the upper half plane")]
    NotInUpperHalfPlane(String),
    #[error("insufficient convergence: rho = {rho:.4} >= 0.9")]
    InsufficientConvergence { rho: f64 },
    #[error("exponent {exponent} is beyond the truncation order {order}")]
    BeyondTruncation {
        exponent: Box<Rational>,
        order: Box<Rational>,
    },
    #[error("invalid twist: (mu, lambda) = (1, 1) is not allowed for k >= 1")]
    InvalidTwist,
    #[error("matrix does not have determinant 1 (det = {0})")]
    DeterminantNotOne(String),
    #[error("c*tau + d vanishes at tau = {0}")]
    Pole(String),
    #[error("exact-series comparison requires exact-domain inputs")]
    WrongDomain,
    #[error("target sector {0} has an identically zero character")]
    DegenerateSector(String),
    #[error("malformed series JSON: {0}")]
    Json(String),
}
