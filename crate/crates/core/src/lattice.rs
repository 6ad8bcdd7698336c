//! Supertrace characters of the rank-one lattice superalgebra `V_{Z alpha}`
//! (`<alpha, alpha> = 1`, shifted conformal vector, central charge `-2`) and
//! its sigma-twisted module `V_{Z alpha + alpha/2}`.
//!
//! Each character is computed two ways: from the lattice sum times the
//! oscillator factor `sum P(n) q^n`, and from the closed form
//! `eta^{-1} theta_i`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::modgroup::SectorPair;
use crate::qseries::{ceil_i64, rat, AnySeries, PuiseuxSeries};
use crate::specfun::{bilateral_bound, dedekind_eta, jacobi_theta, partition_gf, Theta};
use crate::{ExactSeries, Rational};

/// One of the four sectors `(g, h)` with `g, h in {1, sigma}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorId(SectorPair);

impl SectorId {
    pub const ALL: [SectorId; 4] = [
        SectorId::new_unchecked(0, 0),
        SectorId::new_unchecked(0, 1),
        SectorId::new_unchecked(1, 1),
        SectorId::new_unchecked(1, 0),
    ];

    const fn new_unchecked(g: u32, h: u32) -> Self {
        SectorId(SectorPair::from_raw(2, g, h))
    }

    /// `g, h` are exponents of sigma: 0 for the identity, 1 for sigma.
    pub fn new(g: u32, h: u32) -> Result<Self> {
        Self::try_from(SectorPair::new(2, g, h)?)
    }

    pub fn one_one() -> Self {
        Self::ALL[0]
    }

    pub fn one_sigma() -> Self {
        Self::ALL[1]
    }

    pub fn sigma_sigma() -> Self {
        Self::ALL[2]
    }

    pub fn sigma_one() -> Self {
        Self::ALL[3]
    }

    pub fn pair(&self) -> SectorPair {
        self.0
    }

    /// The module is the sigma-twisted one.
    pub fn is_twisted(&self) -> bool {
        self.0.g() == 1
    }

    /// The trace carries `phi(h sigma) = sigma`, i.e. it is a supertrace.
    pub fn is_supertrace(&self) -> bool {
        self.0.h() == 0
    }

    pub fn theta(&self) -> Theta {
        match (self.0.g(), self.0.h()) {
            (0, 0) => Theta::One,
            (0, _) => Theta::Two,
            (_, 1) => Theta::Three,
            _ => Theta::Four,
        }
    }
}

impl TryFrom<SectorPair> for SectorId {
    type Error = Error;

    fn try_from(p: SectorPair) -> Result<Self> {
        if p.group_order() != 2 {
            return Err(Error::InvalidArgument(format!(
                "sector pairs of this model live in Z_2, not Z_{}",
                p.group_order()
            )));
        }
        Ok(SectorId(p))
    }
}

impl fmt::Display for SectorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |x: u32| if x == 0 { "1" } else { "sigma" };
        write!(f, "({},{})", name(self.0.g()), name(self.0.h()))
    }
}

pub fn central_charge() -> Rational {
    Rational::from_integer(BigInt::from(-2))
}

/// `q^{-c/24}` with `c = -2`.
fn vacuum_shift() -> Rational {
    rat(1, 12)
}

/// Lattice-sum exponent and sign for summation index `s`.
fn lattice_term(sector: SectorId, s: i64) -> (Rational, Rational) {
    let exponent = if sector.is_twisted() {
        // (s + 1/2)(s - 1/2)/2
        rat(4 * s * s - 1, 8)
    } else {
        rat(s * (s - 1), 2)
    };
    let sign = if sector.is_supertrace() && s.is_odd() {
        -Rational::one()
    } else {
        Rational::one()
    };
    (exponent, sign)
}

/// `sum_s (+-1)^s q^{l(s)}` with `l(s) = s(s-1)/2` untwisted and
/// `(s^2 - 1/4)/2` twisted; the sign alternates for the supertrace sectors.
pub fn lattice_sum(sector: SectorId, order: &Rational) -> ExactSeries {
    let bound = bilateral_bound(order);
    let terms: Vec<_> = (-bound..=bound).map(|s| lattice_term(sector, s)).collect();
    PuiseuxSeries::from_terms(order.clone(), terms)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterData {
    pub sector: SectorId,
    pub central_charge: Rational,
    pub series: ExactSeries,
}

impl CharacterData {
    pub fn to_json(&self) -> Value {
        let mut v = AnySeries::Exact(self.series.clone()).to_json();
        let p = self.sector.pair();
        v["sector"] = json!([p.g(), p.h()]);
        v["central_charge"] = json!(self.central_charge.to_string());
        v
    }
}

/// Orders for the ingredients; every factor has valuation at least `-1/8`,
/// so one extra unit keeps the product exact up to `order`.
fn working_order(order: &Rational) -> Rational {
    order + Rational::one()
}

/// `T(1, (g, h), tau) = q^{1/12} sum P(n) q^n * lattice_sum`.
pub fn character(sector: SectorId, order: &Rational) -> CharacterData {
    let inner = working_order(order);
    let prefactor =
        ExactSeries::monomial(Rational::one(), vacuum_shift(), &inner + Rational::one())
            .expect("prefactor exponent below its order");
    let series = prefactor
        .mul(&partition_gf(&inner))
        .mul(&lattice_sum(sector, &inner))
        .truncate(order);
    debug_assert!(series.order() == order);
    CharacterData {
        sector,
        central_charge: central_charge(),
        series,
    }
}

/// `eta(tau)^{-1} theta_i(q)` with `theta_1, theta_2, theta_3, theta_4` for
/// `(1,1), (1,sigma), (sigma,sigma), (sigma,1)`.
pub fn eta_theta_form(sector: SectorId, order: &Rational) -> ExactSeries {
    let inner = working_order(order);
    let eta_inv = dedekind_eta(&inner).invert().expect("eta is a unit series");
    eta_inv
        .mul(&jacobi_theta(sector.theta(), &inner))
        .truncate(order)
}

/// Trace of `(L(0) - c/24) phi(h sigma) q^{L(0) - c/24}`, assembled directly
/// from the state counting: every oscillator/lattice term `q^e` is weighted
/// by its own exponent `e`.
pub fn l0_inserted_trace(sector: SectorId, order: &Rational) -> ExactSeries {
    let inner = working_order(order);
    let partitions = partition_gf(&inner);
    let lattice = lattice_sum(sector, &inner);
    let shift = vacuum_shift();
    let mut terms = Vec::new();
    for (n, p) in partitions.terms() {
        for (l, sign) in lattice.terms() {
            let e = &shift + &n + &l;
            if e < *order {
                let c = &e * p * sign;
                terms.push((e, c));
            }
        }
    }
    PuiseuxSeries::from_terms(order.clone(), terms)
}

/// `prod_{n>=1} (1 + q^n) + O(q^order)`.
fn distinct_parts_product(order: &Rational) -> ExactSeries {
    let len = ceil_i64(order).max(0) as usize;
    let mut c = vec![BigInt::zero(); len];
    if len > 0 {
        c[0] = BigInt::one();
    }
    for n in 1..len {
        for i in (n..len).rev() {
            let prev = c[i - n].clone();
            c[i] += prev;
        }
    }
    PuiseuxSeries::from_terms(
        order.clone(),
        c.into_iter()
            .enumerate()
            .map(|(i, v)| (rat(i as i64, 1), Rational::from_integer(v))),
    )
}

/// The `(sigma, 1)` trace with `prod (1 + q^n)` as the oscillator factor.
/// This does not equal `eta^{-1} theta_4`, which needs `sum P(n) q^n`.
pub fn distinct_parts_sigma_one_character(order: &Rational) -> ExactSeries {
    let inner = working_order(order);
    let prefactor =
        ExactSeries::monomial(Rational::one(), vacuum_shift(), &inner + Rational::one())
            .expect("prefactor exponent below its order");
    prefactor
        .mul(&distinct_parts_product(&inner))
        .mul(&lattice_sum(SectorId::sigma_one(), &inner))
        .truncate(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    fn partitions(n: u32) -> i64 {
        fn go(n: u32, max: u32) -> i64 {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|p| go(n - p, p)).sum()
        }
        go(n, n)
    }

    #[test]
    fn sector_labels() {
        assert_eq!(SectorId::one_sigma().to_string(), "(1,sigma)");
        assert!(SectorId::new(2, 0).is_err());
        assert!(SectorId::try_from(SectorPair::new(3, 1, 1).unwrap()).is_err());
        assert_eq!(SectorId::new(1, 0).unwrap(), SectorId::sigma_one());
        assert_eq!(SectorId::sigma_sigma().theta(), Theta::Three);
    }

    #[test]
    fn lattice_sum_examples() {
        let order = q(20, 1);
        assert!(lattice_sum(SectorId::one_one(), &order).is_zero());
        let ls = lattice_sum(SectorId::one_sigma(), &order);
        assert_eq!(ls.coefficient_at(&Rational::zero()).unwrap(), q(2, 1));
        let ss = lattice_sum(SectorId::sigma_sigma(), &order);
        // only s = 0 reaches -1/8; s = 1 and s = -1 both give 3/8
        assert_eq!(ss.leading_term().unwrap(), (q(-1, 8), &q(1, 1)));
        assert_eq!(ss.coefficient_at(&q(3, 8)).unwrap(), q(2, 1));
        let s1 = lattice_sum(SectorId::sigma_one(), &order);
        assert_eq!(s1.coefficient_at(&q(-1, 8)).unwrap(), q(1, 1));
        assert_eq!(s1.coefficient_at(&q(3, 8)).unwrap(), q(-2, 1));
    }

    #[test]
    fn character_examples() {
        let order = q(30, 1);
        assert!(character(SectorId::one_one(), &order).series.is_zero());
        let c = character(SectorId::one_sigma(), &order);
        assert_eq!(c.series.leading_term().unwrap(), (q(1, 12), &q(2, 1)));
        assert_eq!(c.central_charge, q(-2, 1));
        assert_eq!(c.series.order(), &order);
        let c = character(SectorId::sigma_sigma(), &order);
        assert_eq!(c.series.leading_term().unwrap(), (q(-1, 24), &q(1, 1)));
    }

    #[test]
    fn eta_theta_examples() {
        let order = q(30, 1);
        assert!(eta_theta_form(SectorId::one_one(), &order).is_zero());
        let f = eta_theta_form(SectorId::one_sigma(), &order);
        assert_eq!(f.leading_term().unwrap(), (q(1, 12), &q(2, 1)));
        // eta^{-1} theta_4 to order 5 on exponents -1/24 + k/2; the
        // coefficient is sum_n (-1)^n P((k - n^2)/2) over k - n^2 even
        let f4 = eta_theta_form(SectorId::sigma_one(), &q(5, 1));
        let expect = [1, -2, 1, -2, 4, -4, 5, -6, 9];
        for (k, c) in expect.iter().enumerate() {
            let brute: i64 = (-3i64..=3)
                .filter(|n| k as i64 >= n * n && (k as i64 - n * n) % 2 == 0)
                .map(|n| if n % 2 == 0 { 1 } else { -1 } * partitions(((k as i64 - n * n) / 2) as u32))
                .sum();
            assert_eq!(brute, *c);
        }
        for (k, c) in expect.iter().enumerate() {
            assert_eq!(
                f4.coefficient_at(&(q(-1, 24) + q(k as i64, 2))).unwrap(),
                q(*c, 1),
                "k={k}"
            );
        }
    }

    #[test]
    fn characters_match_closed_forms() {
        let order = q(30, 1);
        for s in SectorId::ALL {
            let lhs = character(s, &order).series;
            let rhs = eta_theta_form(s, &order);
            assert_eq!(lhs.first_mismatch(&rhs), None, "sector {s}");
            assert_eq!(lhs.order(), rhs.order());
        }
    }

    #[test]
    fn distinct_parts_sigma_one_differs() {
        let order = q(10, 1);
        let variant = distinct_parts_sigma_one_character(&order);
        let closed = eta_theta_form(SectorId::sigma_one(), &order);
        let mm = variant
            .first_mismatch(&closed)
            .expect("prod(1+q^n) form should disagree");
        // the oscillator factors first differ at q^2: P(2) = 2, Q(2) = 1
        assert_eq!(mm.exponent, q(-1, 24) + q(2, 1));
    }

    #[test]
    fn characters_are_integral_with_expected_supports() {
        let order = q(30, 1);
        for s in SectorId::ALL {
            let c = character(s, &order).series;
            for (e, coeff) in c.terms() {
                assert!(coeff.is_integer());
                if s.is_twisted() {
                    assert!(((e + q(1, 24)) * q(2, 1)).is_integer());
                } else {
                    assert!((e - q(1, 12)).is_integer());
                }
            }
        }
        // sigma-twisted supertrace alternates by half-integer step
        let c = character(SectorId::sigma_one(), &order).series;
        assert!(c
            .coefficient_at(&(q(-1, 24) + q(1, 2)))
            .unwrap()
            .is_negative());
    }

    #[test]
    fn l0_trace_matches_q_derivative() {
        let order = q(20, 1);
        for s in SectorId::ALL {
            let direct = l0_inserted_trace(s, &order);
            let derived = character(s, &order).series.q_d_dq();
            assert_eq!(direct, derived, "sector {s}");
        }
        let t = l0_inserted_trace(SectorId::one_sigma(), &order);
        assert_eq!(t.leading_term().unwrap(), (q(1, 12), &q(1, 6)));
    }

    #[test]
    fn character_json_carries_sector_fields() {
        let v = character(SectorId::sigma_one(), &q(3, 1)).to_json();
        assert_eq!(v["sector"], json!([1, 0]));
        assert_eq!(v["central_charge"], "-2");
        assert_eq!(v["domain"], "exact");
    }
}
