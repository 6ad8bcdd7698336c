//! Coefficient domains for [`PuiseuxSeries`](super::PuiseuxSeries).
//!
//! Two families are supported: exact rationals (`BigRational`) and
//! floating complex numbers (`Complex<f32>`, `Complex<f64>`). The exact
//! domain can only represent the roots of unity `1` and `-1`, which is all
//! the untwisted and `+-1`-twisted series need.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Exact,
    Complex,
}

impl Domain {
    pub fn as_str(&self) -> &'static str {
        match self {
            Domain::Exact => "exact",
            Domain::Complex => "complex",
        }
    }
}

impl Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Requirements on a series coefficient.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const DOMAIN: Domain;

    fn from_rational(r: &Rational) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn checked_inv(&self) -> Option<Self>;

    /// `e^{2 pi i r}`, or `None` when the domain cannot represent it.
    fn unit_root(r: &Rational) -> Option<Self>;

    fn to_complex64(&self) -> Complex64;

    fn is_finite(&self) -> bool;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    fn magnitude(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// Reciprocal of the dense series `sum a_i x^i` to `n` terms, for
    /// domains with a faster route than the generic recurrence.
    fn reciprocal(_a: &[Self], _n: usize) -> Option<Vec<Self>> {
        None
    }
}

/// Reduce `r` into `[0, 1)`.
pub(crate) fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Json(format!("non-integer number {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|e| Error::Json(format!("bad integer {s:?}: {e}"))),
        other => Err(Error::Json(format!("expected integer, got {other}"))),
    }
}

pub(crate) fn rational_to_json(r: &Rational) -> Value {
    json!({ "num": int_to_json(r.numer()), "den": int_to_json(r.denom()) })
}

pub(crate) fn rational_from_json(v: &Value) -> Result<Rational> {
    let num = int_from_json(
        v.get("num")
            .ok_or_else(|| Error::Json("missing num".into()))?,
    )?;
    let den = int_from_json(
        v.get("den")
            .ok_or_else(|| Error::Json("missing den".into()))?,
    )?;
    if den.is_zero() {
        return Err(Error::Json("zero denominator".into()));
    }
    Ok(Rational::new(num, den))
}

impl Coefficient for Rational {
    const DOMAIN: Domain = Domain::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn unit_root(r: &Rational) -> Option<Self> {
        let f = frac(r);
        if f.is_zero() {
            Some(Rational::one())
        } else if f == Rational::new(1.into(), 2.into()) {
            Some(-Rational::one())
        } else {
            None
        }
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn to_json(&self) -> Value {
        rational_to_json(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }

    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }

    // Clear denominators and run the recurrence over the integers:
    // with A = L a, 1/A has coefficients B_k / A_0^{k+1} where
    // B_k = -sum_{i>=1} A_i A_0^{i-1} B_{k-i}.
    fn reciprocal(a: &[Self], n: usize) -> Option<Vec<Self>> {
        let a0 = a.first().filter(|c| !c.is_zero())?;
        let l = a.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = a
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let lead = (a0 * Rational::from_integer(l.clone())).to_integer();
        let mut lead_pows = vec![BigInt::one()];
        let tail: Vec<(usize, BigInt)> = ints
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(i, c)| *i < n && !c.is_zero())
            .map(|(i, c)| {
                while lead_pows.len() < i {
                    let next = lead_pows.last().unwrap() * &lead;
                    lead_pows.push(next);
                }
                (i, c * &lead_pows[i - 1])
            })
            .collect();
        let mut b: Vec<BigInt> = Vec::with_capacity(n);
        b.push(BigInt::one());
        for k in 1..n {
            let mut acc = BigInt::zero();
            for (i, w) in &tail {
                if *i > k {
                    break;
                }
                if !b[k - i].is_zero() {
                    acc += w * &b[k - i];
                }
            }
            b.push(-acc);
        }
        let mut den = lead.clone();
        Some(
            b.into_iter()
                .map(|bk| {
                    let r = Rational::new(bk * &l, den.clone());
                    den *= &lead;
                    r
                })
                .collect(),
        )
    }
}

impl<T> Coefficient for Complex<T>
where
    T: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static,
{
    const DOMAIN: Domain = Domain::Complex;

    fn from_rational(r: &Rational) -> Self {
        Complex::new(
            T::from_f64(rational_to_f64(r)).unwrap_or_else(T::nan),
            T::zero(),
        )
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.inv())
        }
    }

    fn unit_root(r: &Rational) -> Option<Self> {
        let f = frac(r);
        // exact values on the real and imaginary axes avoid sin(pi) ~ 1e-16 noise
        let quarter = Rational::new(1.into(), 4.into());
        let steps = &f / &quarter;
        if steps.is_integer() {
            let (o, z) = (T::one(), T::zero());
            return Some(match steps.to_integer().mod_floor(&4.into()).to_u8() {
                Some(0) => Complex::new(o, z),
                Some(1) => Complex::new(z, o),
                Some(2) => Complex::new(-o, z),
                _ => Complex::new(z, -o),
            });
        }
        let angle = T::from_f64(2.0 * std::f64::consts::PI * rational_to_f64(&f))?;
        Some(Complex::from_polar(T::one(), angle))
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn to_json(&self) -> Value {
        let c = self.to_complex64();
        json!({ "re": c.re, "im": c.im })
    }

    fn from_json(v: &Value) -> Result<Self> {
        let part = |key: &str| -> Result<T> {
            v.get(key)
                .and_then(Value::as_f64)
                .and_then(T::from_f64)
                .ok_or_else(|| Error::Json(format!("missing or non-numeric {key:?}")))
        };
        let c = Complex::new(part("re")?, part("im")?);
        if !Coefficient::is_finite(&c) {
            return Err(Error::Json("non-finite complex coefficient".into()));
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exact_unit_roots_are_plus_minus_one() {
        assert_eq!(Rational::unit_root(&q(3, 1)), Some(Rational::one()));
        assert_eq!(Rational::unit_root(&q(-1, 2)), Some(-Rational::one()));
        assert_eq!(Rational::unit_root(&q(1, 4)), None);
        assert_eq!(Rational::unit_root(&q(1, 24)), None);
    }

    #[test]
    fn complex_unit_roots() {
        let i = Complex64::unit_root(&q(1, 4)).unwrap();
        assert_eq!(i, Complex64::new(0.0, 1.0));
        let w = Complex64::unit_root(&q(1, 24)).unwrap();
        let expect = Complex64::from_polar(1.0, std::f64::consts::PI / 12.0);
        assert!((w - expect).norm() < 1e-15);
        let w32 = Complex::<f32>::unit_root(&q(-1, 3)).unwrap();
        assert!((w32.re + 0.5).abs() < 1e-6);
    }

    #[test]
    fn json_integers_fall_back_to_strings() {
        let big = Rational::new(BigInt::from(10).pow(30), 7.into());
        let v = big.to_json();
        assert!(v["num"].is_string());
        assert_eq!(Rational::from_json(&v).unwrap(), big);
        assert!(Rational::from_json(&json!({"num": 1, "den": 0})).is_err());
    }
}
