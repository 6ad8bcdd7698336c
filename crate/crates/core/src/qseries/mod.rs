//! Exact truncated Puiseux series in `q = e^{2 pi i tau}`.
//!
//! [`PuiseuxSeries`] is generic over its [`Coefficient`] domain. Code that
//! only learns the domain at runtime (the CLI, JSON input) goes through
//! [`AnySeries`], where mixing domains is an error instead of a type error.

mod any;
mod coeff;
mod series;

pub use any::AnySeries;
pub use coeff::{Coefficient, Domain};
pub use series::{Evaluation, Mismatch, PuiseuxSeries};

pub(crate) use coeff::{rational_to_f64, rational_to_json};
pub(crate) use series::{ceil_i64, rat};
