use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coeff::{rational_to_f64, Coefficient, Domain};
use crate::error::{Error, Result};
use crate::Rational;

/// Nonzero terms per window in the numeric tail estimate.
const TAIL_WINDOW: usize = 5;

/// Truncated Laurent-Puiseux series `sum_i c_i q^{(offset + i)/D} + O(q^order)`.
///
/// Stored densely on the `1/D` grid. The representation is normalized after
/// every operation: the first stored coefficient is nonzero (unless the series
/// is zero), and `D` is the smallest ramification on which every nonzero term
/// sits. The order is any rational; every stored slot lies strictly below it.
#[derive(Clone, PartialEq)]
pub struct PuiseuxSeries<C> {
    ramification: u64,
    offset: i64,
    coeffs: Vec<C>,
    order: Rational,
}

/// Result of a numeric evaluation at a point in the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    /// Geometric-majorant estimate of the omitted tail. Not a bound.
    pub tail_estimate: f64,
    /// `false` when the last retained terms are not decreasing in magnitude.
    pub reliable: bool,
    pub rho: f64,
}

/// First exponent where two series differ.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<C> {
    pub exponent: Rational,
    pub left: C,
    pub right: C,
}

pub(crate) fn ceil_i64(r: &Rational) -> i64 {
    r.ceil()
        .to_integer()
        .to_i64()
        .expect("exponent index overflows i64")
}

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn denom_u64(r: &Rational) -> u64 {
    r.denom().to_u64().expect("ramification overflows u64")
}

impl<C: Coefficient> PuiseuxSeries<C> {
    /// The zero series known modulo `q^order`.
    pub fn zero(order: Rational) -> Self {
        let offset = ceil_i64(&order);
        PuiseuxSeries {
            ramification: 1,
            offset,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn constant(c: C, order: Rational) -> Self {
        Self::from_terms(order, std::iter::once((Rational::zero(), c)))
    }

    pub fn one(order: Rational) -> Self {
        Self::constant(C::one(), order)
    }

    /// `coeff * q^exp + O(q^order)`.
    pub fn monomial(coeff: C, exp: Rational, order: Rational) -> Result<Self> {
        if exp >= order {
            return Err(Error::InvalidConstruction(format!(
                "exponent {exp} is not below order {order}"
            )));
        }
        if !coeff.is_finite() {
            return Err(Error::InvalidConstruction("non-finite coefficient".into()));
        }
        Ok(Self::from_terms(order, std::iter::once((exp, coeff))))
    }

    /// Build from `(exponent, coefficient)` pairs. Repeated exponents are
    /// summed; terms at or beyond `order` are dropped.
    pub fn from_terms<I>(order: Rational, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, C)>,
    {
        let mut acc: BTreeMap<Rational, C> = BTreeMap::new();
        for (e, c) in terms {
            if e >= order || c.is_zero() {
                continue;
            }
            let slot = acc.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        acc.retain(|_, c| !c.is_zero());
        let Some(first) = acc.keys().next() else {
            return Self::zero(order);
        };
        let d = acc.keys().fold(1u64, |d, e| d.lcm(&denom_u64(e)));
        let dr = Rational::from_integer(BigInt::from(d));
        let index = |e: &Rational| (e * &dr).to_integer().to_i64().expect("index overflow");
        let offset = index(first);
        let len = (ceil_i64(&(&order * &dr)) - offset).max(0) as usize;
        let mut dense = vec![C::zero(); len];
        for (e, c) in acc {
            dense[(index(&e) - offset) as usize] = c;
        }
        Self::assemble(d, offset, dense, order)
    }

    /// Normalize a dense grid representation. `dense` must cover every slot
    /// below `order` that could be nonzero; missing slots are zero.
    pub(crate) fn assemble(d: u64, offset: i64, mut dense: Vec<C>, order: Rational) -> Self {
        let slots =
            (ceil_i64(&(&order * Rational::from_integer(d.into()))) - offset).max(0) as usize;
        dense.truncate(slots);
        let Some(first) = dense.iter().position(|c| !c.is_zero()) else {
            return Self::zero(order);
        };
        let offset = offset + first as i64;
        dense.drain(..first);
        let g = dense
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(d.gcd(&(offset.unsigned_abs())), |g, (i, _)| {
                g.gcd(&((offset + i as i64).unsigned_abs()))
            });
        if g <= 1 {
            dense.resize(slots - first, C::zero());
            return PuiseuxSeries {
                ramification: d,
                offset,
                coeffs: dense,
                order,
            };
        }
        let g_i = g as i64;
        let d2 = d / g;
        let offset2 = offset / g_i;
        let len2 =
            (ceil_i64(&(&order * Rational::from_integer(d2.into()))) - offset2).max(0) as usize;
        let mut coarse = vec![C::zero(); len2];
        for (i, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                coarse[i / g as usize] = c;
            }
        }
        PuiseuxSeries {
            ramification: d2,
            offset: offset2,
            coeffs: coarse,
            order,
        }
    }

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn order(&self) -> &Rational {
        &self.order
    }

    pub fn domain(&self) -> Domain {
        C::DOMAIN
    }

    /// Dense coefficients; slot `i` carries exponent `(offset + i)/D`.
    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn slot_exponent(&self, i: usize) -> Rational {
        rat(self.offset + i as i64, self.ramification as i64)
    }

    /// Smallest exponent with a nonzero coefficient, or the order for zero.
    pub fn valuation(&self) -> Rational {
        if self.is_zero() {
            self.order.clone()
        } else {
            self.slot_exponent(0)
        }
    }

    pub fn leading_term(&self) -> Option<(Rational, &C)> {
        self.coeffs.first().map(|c| (self.slot_exponent(0), c))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.slot_exponent(i), c))
    }

    fn nonzero_slots(&self) -> Vec<(i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.offset + i as i64, c))
            .collect()
    }

    pub fn coefficient_at(&self, e: &Rational) -> Result<C> {
        if *e >= self.order {
            return Err(Error::BeyondTruncation {
                exponent: Box::new(e.clone()),
                order: Box::new(self.order.clone()),
            });
        }
        let scaled = e * Rational::from_integer(self.ramification.into());
        if !scaled.is_integer() {
            return Ok(C::zero());
        }
        let i = scaled.to_integer().to_i64().expect("index overflow") - self.offset;
        if i < 0 {
            return Ok(C::zero());
        }
        Ok(self.coeffs.get(i as usize).cloned().unwrap_or_else(C::zero))
    }

    /// Reduce the known order to `min(self.order, order)`.
    pub fn truncate(&self, order: &Rational) -> Self {
        if *order >= self.order {
            return self.clone();
        }
        Self::assemble(
            self.ramification,
            self.offset,
            self.coeffs.clone(),
            order.clone(),
        )
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PuiseuxSeries<D> {
        let dense = self.coeffs.iter().map(f).collect();
        PuiseuxSeries::assemble(self.ramification, self.offset, dense, self.order.clone())
    }

    pub fn to_complex(&self) -> PuiseuxSeries<Complex64> {
        self.map_coeffs(Coefficient::to_complex64)
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    /// Termwise sum; the result is known modulo `q^{min(order)}`.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(C, C) -> C) -> Self {
        let order = (&self.order).min(&other.order).clone();
        let d = self.ramification.lcm(&other.ramification);
        let (sa, sb) = (
            (d / self.ramification) as i64,
            (d / other.ramification) as i64,
        );
        let offset = (self.offset * sa).min(other.offset * sb);
        let len = (ceil_i64(&(&order * Rational::from_integer(d.into()))) - offset).max(0) as usize;
        let mut dense = vec![C::zero(); len];
        for (k, c) in self.nonzero_slots() {
            if let Some(slot) = dense.get_mut((k * sa - offset) as usize) {
                *slot = c.clone();
            }
        }
        for (k, c) in other.nonzero_slots() {
            if let Some(slot) = dense.get_mut((k * sb - offset) as usize) {
                *slot = op(slot.clone(), c.clone());
            }
        }
        Self::assemble(d, offset, dense, order)
    }

    /// Cauchy product. The result order is
    /// `min(order_a + val(b), order_b + val(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (&self.order + other.valuation()).min(&other.order + self.valuation());
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let d = self.ramification.lcm(&other.ramification);
        let (sa, sb) = (
            (d / self.ramification) as i64,
            (d / other.ramification) as i64,
        );
        let offset = self.offset * sa + other.offset * sb;
        let len = (ceil_i64(&(&order * Rational::from_integer(d.into()))) - offset).max(0) as usize;
        let mut dense = vec![C::zero(); len];
        let lhs = self.nonzero_slots();
        let rhs = other.nonzero_slots();
        for (ka, ca) in &lhs {
            let base = ka * sa;
            for (kb, cb) in &rhs {
                let idx = (base + kb * sb - offset) as usize;
                if idx >= len {
                    break;
                }
                dense[idx] = dense[idx].clone() + (*ca).clone() * (*cb).clone();
            }
        }
        Self::assemble(d, offset, dense, order)
    }

    /// Multiplicative inverse by the recursive coefficient solve. For
    /// `a = c q^v (1 + ...) + O(q^O)` the result is known modulo `q^{O - 2v}`.
    pub fn invert(&self) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .filter(|c| !c.is_zero())
            .ok_or(Error::NonInvertible)?;
        let lead_inv = lead.checked_inv().ok_or(Error::NonInvertible)?;
        let n = self.coeffs.len();
        let v = self.valuation();
        let order = &self.order - &v - &v;
        if let Some(inv) = C::reciprocal(&self.coeffs, n) {
            return Ok(Self::assemble(self.ramification, -self.offset, inv, order));
        }
        let tail: Vec<(usize, &C)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut inv: Vec<C> = Vec::with_capacity(n);
        inv.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for (i, a) in &tail {
                if *i > k {
                    break;
                }
                let b = &inv[k - i];
                if !b.is_zero() {
                    acc = acc + (*a).clone() * b.clone();
                }
            }
            inv.push(-(acc * lead_inv.clone()));
        }
        Ok(Self::assemble(self.ramification, -self.offset, inv, order))
    }

    /// Integer power; negative exponents go through [`invert`](Self::invert).
    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.invert()? } else { self.clone() };
        if n == 0 {
            let rel = (&self.order - self.valuation()).max(Rational::one());
            return Ok(Self::one(rel));
        }
        let mut acc = base.clone();
        for _ in 1..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `q d/dq`, i.e. `(2 pi i)^{-1} d/dtau`: each `c q^e` maps to `c e q^e`.
    pub fn q_d_dq(&self) -> Self {
        let dense = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_zero() {
                    C::zero()
                } else {
                    c.clone() * C::from_rational(&self.slot_exponent(i))
                }
            })
            .collect();
        Self::assemble(self.ramification, self.offset, dense, self.order.clone())
    }

    /// Substitute `tau -> r tau`, i.e. `q^e -> q^{r e}`.
    pub fn rescale(&self, r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "rescale factor {r} must be positive"
            )));
        }
        let terms: Vec<_> = self.terms().map(|(e, c)| (e * r, c.clone())).collect();
        Ok(Self::from_terms(&self.order * r, terms))
    }

    /// Substitute `tau -> tau + s`, i.e. `q^e -> e^{2 pi i e s} q^e`.
    pub fn shift_tau(&self, s: &Rational) -> Result<Self> {
        let mut dense = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                dense.push(C::zero());
                continue;
            }
            let phase = self.slot_exponent(i) * s;
            let w = C::unit_root(&phase).ok_or(Error::DomainPromotionRequired(phase))?;
            dense.push(c.clone() * w);
        }
        Ok(Self::assemble(
            self.ramification,
            self.offset,
            dense,
            self.order.clone(),
        ))
    }

    /// Ramification of the support measured from the leading exponent. This
    /// is the grid spacing that governs convergence once the leading
    /// monomial is factored out.
    pub fn support_ramification(&self) -> u64 {
        let slots = self.nonzero_slots();
        if slots.len() < 2 {
            return self.ramification;
        }
        let k0 = slots[0].0;
        let g = slots[1..]
            .iter()
            .fold(0u64, |g, (k, _)| g.gcd(&((k - k0) as u64)));
        self.ramification / g.gcd(&self.ramification)
    }

    /// Numeric value at `tau` (with `q = e^{2 pi i tau}`) plus a tail estimate.
    pub fn evaluate(&self, tau: Complex64) -> Result<Evaluation> {
        if tau.im.is_nan() || tau.im <= 0.0 || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::NotInUpperHalfPlane(format!("{tau}")));
        }
        let abs_q = (-2.0 * std::f64::consts::PI * tau.im).exp();
        let d_eff = self.support_ramification();
        let rho = abs_q.powf(1.0 / d_eff as f64);
        if rho >= 0.9 {
            return Err(Error::InsufficientConvergence { rho });
        }
        let two_pi_i_tau = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * tau;
        let mut value = Complex64::new(0.0, 0.0);
        // (exponent, |c|, |c q^e|) for the last two windows of nonzero terms
        let mut recent: Vec<(f64, f64, f64)> = Vec::new();
        for (e, c) in self.terms() {
            let ef = rational_to_f64(&e);
            let cz = c.to_complex64();
            value += cz * (two_pi_i_tau * ef).exp();
            let m = cz.norm();
            recent.push((ef, m, m * abs_q.powf(ef)));
            if recent.len() > 2 * TAIL_WINDOW {
                recent.remove(0);
            }
        }
        let Some(&(e_last, _, _)) = recent.last() else {
            return Ok(Evaluation {
                value,
                tail_estimate: 0.0,
                reliable: true,
                rho,
            });
        };
        let step = 1.0 / d_eff as f64;
        let split = recent.len().saturating_sub(TAIL_WINDOW);
        let (older, newer) = recent.split_at(split);
        let peak = |w: &[(f64, f64, f64)], i: usize| {
            w.iter()
                .map(|t| if i == 1 { t.1 } else { t.2 })
                .fold(0.0, f64::max)
        };
        let c_peak = peak(newer, 1);
        // per-slot growth of the coefficient envelope between the two windows
        let growth = if older.is_empty() {
            1.0
        } else {
            let slots = ((newer[0].0 - older[0].0) / step).round().max(1.0);
            (c_peak / peak(older, 1)).powf(1.0 / slots).max(1.0)
        };
        let reliable = if older.is_empty() {
            newer.windows(2).all(|w| w[1].2 <= w[0].2)
        } else {
            peak(newer, 2) <= peak(older, 2)
        };
        let rho_eff = rho * growth;
        if rho_eff >= 1.0 {
            return Ok(Evaluation {
                value,
                tail_estimate: f64::INFINITY,
                reliable: false,
                rho,
            });
        }
        let order_f = rational_to_f64(&self.order);
        // last slot of the support grid strictly below the order
        let k = (((order_f - e_last) / step).ceil() - 1.0).max(0.0);
        let magnitude = c_peak * growth.powf(k) * abs_q.powf(e_last + k * step);
        let tail_estimate = magnitude * rho_eff / (1.0 - rho_eff);
        Ok(Evaluation {
            value,
            tail_estimate,
            reliable,
            rho,
        })
    }

    /// First mismatch below the common order, or `None` if the series agree.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch<C>> {
        let order = (&self.order).min(&other.order).clone();
        let mut keys: Vec<Rational> = self
            .terms()
            .chain(other.terms())
            .map(|(e, _)| e)
            .filter(|e| *e < order)
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|e| {
            let left = self.coefficient_at(&e).ok()?;
            let right = other.coefficient_at(&e).ok()?;
            (left != right).then_some(Mismatch {
                exponent: e,
                left,
                right,
            })
        })
    }

    /// Coefficientwise equality up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }
}

impl<C: Coefficient> PuiseuxSeries<C> {
    /// Check the representation invariants; used by tests.
    pub fn is_well_formed(&self) -> bool {
        let d = Rational::from_integer(self.ramification.into());
        let slots = (ceil_i64(&(&self.order * &d)) - self.offset).max(0) as usize;
        self.ramification >= 1
            && self.coeffs.len() == slots
            && self.coeffs.first().is_none_or(|c| !c.is_zero())
            && self.terms().all(|(e, _)| e < self.order)
    }
}

impl<C: Coefficient> fmt::Display for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let cs = match C::DOMAIN {
                Domain::Exact => exact_coeff_string(c),
                Domain::Complex => {
                    let z = c.to_complex64();
                    format!("({:+.12e}{:+.12e}i)", z.re, z.im)
                }
            };
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{cs}")?;
            } else if e.is_integer() {
                write!(f, "{cs}*q^{e}")?;
            } else {
                write!(f, "{cs}*q^({e})")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        if self.order.is_integer() {
            write!(f, " + O(q^{})", self.order)
        } else {
            write!(f, " + O(q^({}))", self.order)
        }
    }
}

fn exact_coeff_string<C: Coefficient>(c: &C) -> String {
    let v = c.to_json();
    let num = &v["num"];
    let den = &v["den"];
    let strip = |x: &serde_json::Value| x.to_string().trim_matches('"').to_string();
    if den == &serde_json::json!(1) {
        strip(num)
    } else {
        format!("({}/{})", strip(num), strip(den))
    }
}

impl<C: Coefficient> fmt::Debug for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuiseuxSeries[D={}, {}]", self.ramification, self)
    }
}
