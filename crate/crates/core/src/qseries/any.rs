use num_complex::Complex64;
use serde_json::{json, Map, Value};

use super::coeff::{rational_from_json, rational_to_json, Coefficient, Domain};
use super::series::{Evaluation, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::Rational;

/// A series whose coefficient domain is only known at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Exact(PuiseuxSeries<Rational>),
    Complex(PuiseuxSeries<Complex64>),
}

impl From<PuiseuxSeries<Rational>> for AnySeries {
    fn from(s: PuiseuxSeries<Rational>) -> Self {
        AnySeries::Exact(s)
    }
}

impl From<PuiseuxSeries<Complex64>> for AnySeries {
    fn from(s: PuiseuxSeries<Complex64>) -> Self {
        AnySeries::Complex(s)
    }
}

macro_rules! binary {
    ($name:ident) => {
        pub fn $name(&self, other: &Self) -> Result<Self> {
            match (self, other) {
                (AnySeries::Exact(a), AnySeries::Exact(b)) => Ok(a.$name(b).into()),
                (AnySeries::Complex(a), AnySeries::Complex(b)) => Ok(a.$name(b).into()),
                (a, b) => Err(Error::DomainMismatch(
                    a.domain().as_str(),
                    b.domain().as_str(),
                )),
            }
        }
    };
}

impl AnySeries {
    binary!(add);
    binary!(sub);
    binary!(mul);

    pub fn domain(&self) -> Domain {
        match self {
            AnySeries::Exact(_) => Domain::Exact,
            AnySeries::Complex(_) => Domain::Complex,
        }
    }

    pub fn order(&self) -> &Rational {
        match self {
            AnySeries::Exact(s) => s.order(),
            AnySeries::Complex(s) => s.order(),
        }
    }

    pub fn to_complex(&self) -> PuiseuxSeries<Complex64> {
        match self {
            AnySeries::Exact(s) => s.to_complex(),
            AnySeries::Complex(s) => s.clone(),
        }
    }

    pub fn evaluate(&self, tau: Complex64) -> Result<Evaluation> {
        match self {
            AnySeries::Exact(s) => s.evaluate(tau),
            AnySeries::Complex(s) => s.evaluate(tau),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySeries::Exact(s) => series_to_json(s),
            AnySeries::Complex(s) => series_to_json(s),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("domain").and_then(Value::as_str) {
            Some("exact") => Ok(AnySeries::Exact(series_from_json(v)?)),
            Some("complex") => Ok(AnySeries::Complex(series_from_json(v)?)),
            other => Err(Error::Json(format!("unknown domain {other:?}"))),
        }
    }
}

impl std::fmt::Display for AnySeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnySeries::Exact(s) => s.fmt(f),
            AnySeries::Complex(s) => s.fmt(f),
        }
    }
}

/// `{"ramification", "offset", "order", "domain", "terms": [{"i", "coeff"}]}`
/// with zero coefficients omitted.
pub fn series_to_json<C: Coefficient>(s: &PuiseuxSeries<C>) -> Value {
    let terms: Vec<Value> = s
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| json!({ "i": i, "coeff": c.to_json() }))
        .collect();
    let mut m = Map::new();
    m.insert("ramification".into(), json!(s.ramification()));
    m.insert("offset".into(), json!(s.offset()));
    m.insert("order".into(), rational_to_json(s.order()));
    m.insert("domain".into(), json!(C::DOMAIN.as_str()));
    m.insert("terms".into(), Value::Array(terms));
    Value::Object(m)
}

pub fn series_from_json<C: Coefficient>(v: &Value) -> Result<PuiseuxSeries<C>> {
    let domain = v.get("domain").and_then(Value::as_str);
    if domain != Some(C::DOMAIN.as_str()) {
        return Err(Error::Json(format!(
            "expected domain {}, found {domain:?}",
            C::DOMAIN
        )));
    }
    let d = v
        .get("ramification")
        .and_then(Value::as_u64)
        .filter(|d| *d >= 1)
        .ok_or_else(|| Error::Json("ramification must be a positive integer".into()))?;
    let offset = v
        .get("offset")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::Json("offset must be an integer".into()))?;
    let order = rational_from_json(
        v.get("order")
            .ok_or_else(|| Error::Json("missing order".into()))?,
    )?;
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("terms must be an array".into()))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let i = t
            .get("i")
            .and_then(Value::as_i64)
            .filter(|i| *i >= 0)
            .ok_or_else(|| Error::Json("term index must be a nonnegative integer".into()))?;
        let c = C::from_json(
            t.get("coeff")
                .ok_or_else(|| Error::Json("missing coeff".into()))?,
        )?;
        let e = super::rat(offset + i, d as i64);
        if e >= order {
            return Err(Error::Json(format!(
                "term exponent {e} is not below order {order}"
            )));
        }
        parsed.push((e, c));
    }
    Ok(PuiseuxSeries::from_terms(order, parsed))
}
