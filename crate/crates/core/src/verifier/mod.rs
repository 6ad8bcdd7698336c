//! Exact and numeric identity checks, the closure scan over sectors, the
//! pinned check suites, and the report format shared by the CLI.

mod report;
mod spec;
mod suites;

pub use report::{CheckKind, CheckReport};
pub use spec::{parse_complex, parse_order, parse_point, parse_twist, SeriesSpec};
pub use suites::{run_suite, Suite, SuiteConfig};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{character, SectorId};
use crate::modgroup::{HalfPlanePoint, ModularMatrix};
use crate::qseries::{rational_to_json, AnySeries, Coefficient, PuiseuxSeries};
use crate::{ExactSeries, Rational};

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Compare two exact series coefficientwise below their common order.
pub fn check_series_equal(name: &str, a: &AnySeries, b: &AnySeries) -> Result<CheckReport> {
    match (a, b) {
        (AnySeries::Exact(a), AnySeries::Exact(b)) => {
            let common = a.order().min(b.order()).clone();
            Ok(check_exact(name, a, b, &common))
        }
        _ => Err(Error::WrongDomain),
    }
}

/// Like [`check_series_equal`], but the comparison must reach `required`;
/// otherwise the report fails with an insufficient-order record instead of
/// passing on too few coefficients.
pub fn check_exact(
    name: &str,
    a: &ExactSeries,
    b: &ExactSeries,
    required: &Rational,
) -> CheckReport {
    let common = a.order().min(b.order()).clone();
    let mut details = Vec::new();
    let mismatch = a.first_mismatch(b);
    let compared = a
        .terms()
        .chain(b.terms())
        .filter(|(e, _)| *e < common)
        .count();
    details.push(
        json!({ "compared_below": rational_to_json(&common), "nonzero_terms_seen": compared }),
    );
    let mut passed = mismatch.is_none();
    if let Some(m) = &mismatch {
        details.push(json!({
            "first_mismatch": {
                "exponent": rational_to_json(&m.exponent),
                "left": m.left.to_json(),
                "right": m.right.to_json(),
            }
        }));
    }
    if common < *required {
        passed = false;
        details.push(json!({
            "insufficient_order": { "required": rational_to_json(required), "available": rational_to_json(&common) }
        }));
    }
    CheckReport::exact(name, passed, common, details)
}

/// How the automorphy factor multiplying the right-hand side is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AutomorphyFactor {
    /// `(c tau + d)^weight`.
    #[default]
    CTauPlusD,
    /// `(-i tau)^weight`, the form of the eta inversion law.
    MinusITau,
}

/// `f(gamma tau) = multiplier * factor(tau)^weight * g(tau)` at each sample point.
#[derive(Debug, Clone)]
pub struct TransformSpec {
    pub gamma: ModularMatrix,
    pub weight: Rational,
    pub multiplier: Complex64,
    pub factor: AutomorphyFactor,
    pub sample_points: Vec<HalfPlanePoint>,
    pub tolerance: f64,
}

impl TransformSpec {
    pub fn new(
        gamma: ModularMatrix,
        weight: Rational,
        sample_points: Vec<HalfPlanePoint>,
        tolerance: f64,
    ) -> Self {
        TransformSpec {
            gamma,
            weight,
            multiplier: Complex64::new(1.0, 0.0),
            factor: AutomorphyFactor::CTauPlusD,
            sample_points,
            tolerance,
        }
    }

    pub fn with_multiplier(mut self, m: Complex64) -> Self {
        self.multiplier = m;
        self
    }

    pub fn with_factor(mut self, f: AutomorphyFactor) -> Self {
        self.factor = f;
        self
    }

    /// `multiplier * factor(tau)^weight`.
    pub fn scalar_at(&self, p: &HalfPlanePoint) -> Complex64 {
        let f = match self.factor {
            AutomorphyFactor::CTauPlusD => self.gamma.slash_factor(&-self.weight.clone(), p),
            AutomorphyFactor::MinusITau => {
                let z = Complex64::new(0.0, -1.0) * p.tau();
                let w = crate::qseries::rational_to_f64(&self.weight);
                z.powf(w)
            }
        };
        self.multiplier * f
    }
}

/// Residual of `f(gamma tau) - multiplier (c tau + d)^weight g(tau)` per point.
pub fn check_transform_numeric<A: Coefficient, B: Coefficient>(
    name: &str,
    f: &PuiseuxSeries<A>,
    g: &PuiseuxSeries<B>,
    spec: &TransformSpec,
) -> Result<CheckReport> {
    let mut details = Vec::new();
    let mut max_residual = 0.0f64;
    let mut max_tail = 0.0f64;
    let mut reliable = true;
    for p in &spec.sample_points {
        let image = spec.gamma.mobius(p)?;
        let lhs = f.evaluate(image.tau())?;
        let rhs_g = g.evaluate(p.tau())?;
        let scalar = spec.scalar_at(p);
        let rhs = scalar * rhs_g.value;
        let residual = (lhs.value - rhs).norm();
        let tail = lhs.tail_estimate + scalar.norm() * rhs_g.tail_estimate;
        reliable &= lhs.reliable && rhs_g.reliable;
        max_residual = max_residual.max(residual);
        max_tail = max_tail.max(tail);
        details.push(json!({
            "tau": cjson(p.tau()),
            "gamma_tau": cjson(image.tau()),
            "lhs": cjson(lhs.value),
            "rhs": cjson(rhs),
            "residual": residual,
            "tail_estimate": tail,
            "reliable": lhs.reliable && rhs_g.reliable,
        }));
    }
    let passed = reliable && max_residual < spec.tolerance && max_tail < spec.tolerance / 10.0;
    let order = f.order().min(g.order()).clone();
    Ok(
        CheckReport::numeric(name, passed, order, max_residual, max_tail, details)
            .with_tolerance(spec.tolerance),
    )
}

/// Result of fitting `T(sector)(gamma tau) = scalar * T(target)(tau)`.
#[derive(Debug, Clone)]
pub struct ClosureOutcome {
    pub target: SectorId,
    pub scalar: Complex64,
    pub report: CheckReport,
}

/// Fit the scalar relating a sector character at `gamma tau` to the
/// character of the image sector `(g, h) gamma` at `tau`, then check that the
/// same scalar fits every other sample point. Only the vacuum insertion
/// `v = 1` is available, so independence of `v` is not tested.
pub fn closure_scan(
    sector: SectorId,
    gamma: &ModularMatrix,
    sample_points: &[HalfPlanePoint],
    tolerance: f64,
    order: &Rational,
) -> Result<ClosureOutcome> {
    let target = SectorId::try_from(sector.pair().act(gamma))?;
    let f = character(sector, order).series;
    let g = character(target, order).series;
    if g.is_zero() {
        return Err(Error::DegenerateSector(target.to_string()));
    }
    let first = sample_points.first().ok_or_else(|| {
        Error::InvalidArgument("closure scan needs at least one sample point".into())
    })?;
    let ratio_at = |p: &HalfPlanePoint| -> Result<(Complex64, f64, bool)> {
        let lhs = f.evaluate(gamma.mobius(p)?.tau())?;
        let rhs = g.evaluate(p.tau())?;
        let r = lhs.value / rhs.value;
        let rel_tail = (lhs.tail_estimate + r.norm() * rhs.tail_estimate) / rhs.value.norm();
        Ok((r, rel_tail, lhs.reliable && rhs.reliable))
    };
    let (scalar, tail0, rel0) = ratio_at(first)?;
    let mut max_residual = 0.0f64;
    let mut max_tail = tail0;
    let mut reliable = rel0;
    let mut details = vec![json!({
        "source": sector.to_string(),
        "target": target.to_string(),
        "gamma": gamma.to_csv(),
        "fitted_scalar": cjson(scalar),
        "fitted_at": cjson(first.tau()),
        "v_independence": "untested: only v = 1 is available",
    })];
    for p in &sample_points[1..] {
        let (r, tail, rel) = ratio_at(p)?;
        let residual = (r - scalar).norm();
        max_residual = max_residual.max(residual);
        max_tail = max_tail.max(tail);
        reliable &= rel;
        details.push(json!({ "tau": cjson(p.tau()), "ratio": cjson(r), "residual": residual, "tail_estimate": tail }));
    }
    let passed = reliable && max_residual < tolerance && max_tail < tolerance / 10.0;
    let name = format!("closure-scan {} gamma=({})", sector, gamma.to_csv());
    let report = CheckReport::numeric(
        &name,
        passed,
        order.clone(),
        max_residual,
        max_tail,
        details,
    )
    .with_tolerance(tolerance);
    Ok(ClosureOutcome {
        target,
        scalar,
        report,
    })
}

#[cfg(test)]
mod tests;
