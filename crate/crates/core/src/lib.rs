//! Exact q-series machinery for orbifold trace functions.
//!
//! The crate computes truncated Puiseux expansions of Eisenstein series,
//! twisted `Q_k` series, the Dedekind eta function and Jacobi theta
//! functions; carries the action of `SL(2, Z)` on the upper half plane and on
//! commuting sector pairs; and reproduces the four supertrace characters of
//! the rank-one lattice superalgebra `V_{Z alpha}` (central charge `-2`)
//! together with their modular transformation behaviour.

pub mod error;
pub mod lattice;
pub mod modgroup;
pub mod qseries;
pub mod specfun;
pub mod verifier;

pub use error::{Error, Result};

/// Exact coefficient field.
pub type Rational = num_rational::BigRational;
/// Floating complex coefficients and evaluation points.
pub type ComplexNum = num_complex::Complex64;

pub type ExactSeries = qseries::PuiseuxSeries<Rational>;
pub type ComplexSeries = qseries::PuiseuxSeries<ComplexNum>;
pub type ComplexSeries32 = qseries::PuiseuxSeries<num_complex::Complex32>;
