//! The special series: Bernoulli polynomials, normalized Eisenstein series,
//! the twisted series `Q_k(mu, lambda, tau)`, Dedekind eta, Jacobi theta
//! functions and the partition generating function.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::{ceil_i64, rat, Coefficient, PuiseuxSeries};
use crate::{ExactSeries, Rational};

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `B_0, ..., B_n` from `sum_{i=0}^{m} C(m+1, i) B_i = 0`, so `B_1 = -1/2`.
pub fn bernoulli_numbers(n: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n as usize + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let s: Rational = (0..m)
            .map(|i| int(binomial(m + 1, i)) * &b[i as usize])
            .sum();
        b.push(-s / int(m + 1));
    }
    b
}

/// Bernoulli polynomial `B_k(x)`, defined by `t e^{tx}/(e^t - 1) = sum B_r(x) t^r / r!`.
pub fn bernoulli_poly(k: u32, x: &Rational) -> Rational {
    let b = bernoulli_numbers(k);
    (0..=k)
        .map(|i| {
            int(binomial(k, i)) * &b[i as usize] * num_traits::pow(x.clone(), (k - i) as usize)
        })
        .sum()
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn divisor_sigma(k: u32, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("divisor_sigma needs n >= 1".into()));
    }
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    Ok(total)
}

/// `E_k = -B_k/k! + 2/(k-1)! sum_{n>=1} sigma_{k-1}(n) q^n` for even `k >= 2`.
pub fn eisenstein(k: u32, order: &Rational) -> Result<ExactSeries> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "Eisenstein weight {k} must be even and >= 2"
        )));
    }
    let bk = bernoulli_numbers(k).pop().unwrap();
    let scale = Rational::new(BigInt::from(2), factorial(k - 1));
    let top = ceil_i64(order).max(1) as u64;
    let mut terms = vec![(Rational::zero(), -bk / int(factorial(k)))];
    for n in 1..top {
        terms.push((int(n), &scale * int(divisor_sigma(k - 1, n)?)));
    }
    Ok(PuiseuxSeries::from_terms(order.clone(), terms))
}

/// Twist data `(mu, lambda) = (e^{2 pi i j/T}, e^{2 pi i l/T1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwistParams {
    pub j: u64,
    pub t: u64,
    pub l: u64,
    pub t1: u64,
}

impl TwistParams {
    pub fn new(j: u64, t: u64, l: u64, t1: u64) -> Result<Self> {
        if t == 0 || t1 == 0 || j >= t || l >= t1 {
            return Err(Error::InvalidArgument(format!(
                "twist ({j},{t},{l},{t1}) needs 0 <= j < T and 0 <= l < T1"
            )));
        }
        Ok(TwistParams { j, t, l, t1 })
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0 && self.l == 0
    }

    /// `j/T`.
    pub fn mu_angle(&self) -> Rational {
        rat(self.j as i64, self.t as i64)
    }

    /// `l/T1`.
    pub fn lambda_angle(&self) -> Rational {
        rat(self.l as i64, self.t1 as i64)
    }

    /// Whether `lambda = +-1`, so the exact domain suffices.
    pub fn is_exact(&self) -> bool {
        Rational::unit_root(&self.lambda_angle()).is_some()
    }
}

/// `Q_k(mu, lambda, tau)`:
///
/// ```text
/// 1/(k-1)! sum_{n>=0} lambda (n+j/T)^{k-1} q^{n+j/T} / (1 - lambda q^{n+j/T})
///   + (-1)^k/(k-1)! sum_{n>=1} lambda^{-1} (n-j/T)^{k-1} q^{n-j/T} / (1 - lambda^{-1} q^{n-j/T})
///   - B_k(j/T)/k!
/// ```
///
/// with `Q_0 = -1`. Each geometric factor is expanded as
/// `sum_{m>=1} lambda^m q^{m r}`, except the `n = 0, j = 0` term of the first
/// sum, which has no `q` dependence and contributes `lambda/(1 - lambda)` when
/// `k = 1` (with `0^0 = 1`) and nothing otherwise.
pub fn q_twisted<C: Coefficient>(
    k: u32,
    tw: &TwistParams,
    order: &Rational,
) -> Result<PuiseuxSeries<C>> {
    if k == 0 {
        return Ok(PuiseuxSeries::constant(-C::one(), order.clone()));
    }
    if tw.is_trivial() {
        return Err(Error::InvalidTwist);
    }
    let lam_angle = tw.lambda_angle();
    let lambda_pow = |m: i64| -> Result<C> {
        let a = &lam_angle * int(m);
        C::unit_root(&a).ok_or(Error::DomainPromotionRequired(a))
    };
    let inv_fact = Rational::new(BigInt::one(), factorial(k - 1));
    let sign = if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let shift = tw.mu_angle();
    let power = |r: &Rational| -> Rational {
        // 0^0 = 1 convention
        if k == 1 {
            Rational::one()
        } else {
            num_traits::pow(r.clone(), (k - 1) as usize)
        }
    };

    let mut terms: Vec<(Rational, C)> = Vec::new();
    let constant = -bernoulli_poly(k, &shift) / int(factorial(k));
    terms.push((Rational::zero(), C::from_rational(&constant)));

    // first sum, r = n + j/T
    for n in 0.. {
        let r = int(n) + &shift;
        if r >= *order {
            break;
        }
        if r.is_zero() {
            if k == 1 {
                let lam = lambda_pow(1)?;
                let denom = (C::one() - lam.clone())
                    .checked_inv()
                    .ok_or(Error::InvalidTwist)?;
                terms.push((Rational::zero(), lam * denom));
            }
            continue;
        }
        let base = C::from_rational(&(power(&r) * &inv_fact));
        let mut m = 1i64;
        while &r * int(m) < *order {
            terms.push((&r * int(m), base.clone() * lambda_pow(m)?));
            m += 1;
        }
    }

    // second sum, r = n - j/T > 0 since j < T
    for n in 1.. {
        let r = int(n) - &shift;
        if r >= *order {
            break;
        }
        let base = C::from_rational(&(power(&r) * &inv_fact * &sign));
        let mut m = 1i64;
        while &r * int(m) < *order {
            terms.push((&r * int(m), base.clone() * lambda_pow(-m)?));
            m += 1;
        }
    }
    Ok(PuiseuxSeries::from_terms(order.clone(), terms))
}

/// `prod_{n>=1} (1 - q^n) + O(q^order)`.
pub fn euler_product(order: &Rational) -> ExactSeries {
    let len = ceil_i64(order).max(0) as usize;
    let mut c = vec![BigInt::zero(); len];
    if len > 0 {
        c[0] = BigInt::one();
    }
    for n in 1..len {
        for i in (n..len).rev() {
            let prev = c[i - n].clone();
            c[i] -= prev;
        }
    }
    PuiseuxSeries::from_terms(
        order.clone(),
        c.into_iter()
            .enumerate()
            .map(|(i, v)| (int(i as u64), Rational::from_integer(v))),
    )
}

/// `eta(tau) = q^{1/24} prod_{n>=1} (1 - q^n)`.
pub fn dedekind_eta(order: &Rational) -> ExactSeries {
    let lead = rat(1, 24);
    let body = euler_product(&(order - &lead));
    PuiseuxSeries::from_terms(
        order.clone(),
        body.terms()
            .map(|(e, c)| (e + &lead, c.clone()))
            .collect::<Vec<_>>(),
    )
}

/// `sum_{n>=0} P(n) q^n = prod_{n>=1} (1 - q^n)^{-1}`.
pub fn partition_gf(order: &Rational) -> ExactSeries {
    euler_product(order)
        .invert()
        .expect("Euler product is a unit series")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theta {
    One,
    Two,
    Three,
    Four,
}

impl Theta {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Theta::One),
            2 => Ok(Theta::Two),
            3 => Ok(Theta::Three),
            4 => Ok(Theta::Four),
            _ => Err(Error::InvalidArgument(format!(
                "theta index {i} not in 1..=4"
            ))),
        }
    }
}

/// Summation bound for bilateral sums with exponent about `s^2/2`.
pub(crate) fn bilateral_bound(order: &Rational) -> i64 {
    let o = ceil_i64(order).max(0) as u64;
    (2 * o).sqrt() as i64 + 2
}

/// Jacobi theta functions in the normalization
/// `theta_1 = sum (-1)^n q^{(n-1/2)^2/2}`, `theta_2 = sum q^{(n-1/2)^2/2}`,
/// `theta_3 = sum q^{n^2/2}`, `theta_4 = sum (-1)^n q^{n^2/2}`.
/// `theta_1` vanishes identically: terms `n` and `1 - n` cancel.
pub fn jacobi_theta(which: Theta, order: &Rational) -> ExactSeries {
    let bound = bilateral_bound(order);
    let half = rat(1, 2);
    let terms = (-bound..=bound).map(|n| {
        let alt = if n.is_odd() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let shifted = (int(n) - &half) * (int(n) - &half) * &half;
        let square = int(n * n) * &half;
        match which {
            Theta::One => (shifted, alt),
            Theta::Two => (shifted, Rational::one()),
            Theta::Three => (square, Rational::one()),
            Theta::Four => (square, alt),
        }
    });
    PuiseuxSeries::from_terms(order.clone(), terms.collect::<Vec<_>>())
}
