//! `SL(2, Z)`, the congruence subgroups `Gamma(T, T1)`, the Moebius and slash
//! actions on the upper half plane, and the right action on sector pairs.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Float, FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qseries::rational_to_f64;
use crate::Rational;

/// An integer matrix `(a b; c d)` with `ad - bc = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl ModularMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let m = ModularMatrix {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.det();
        if !det.is_one() {
            return Err(Error::DeterminantNotOne(det.to_string()));
        }
        Ok(m)
    }

    fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn identity() -> Self {
        ModularMatrix {
            a: 1.into(),
            b: 0.into(),
            c: 0.into(),
            d: 1.into(),
        }
    }

    /// `S = (0 -1; 1 0)`, `tau -> -1/tau`.
    pub fn s() -> Self {
        ModularMatrix {
            a: 0.into(),
            b: (-1).into(),
            c: 1.into(),
            d: 0.into(),
        }
    }

    /// `T = (1 1; 0 1)`, `tau -> tau + 1`.
    pub fn t() -> Self {
        ModularMatrix {
            a: 1.into(),
            b: 1.into(),
            c: 0.into(),
            d: 1.into(),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn inverse(&self) -> Self {
        ModularMatrix {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        ModularMatrix {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = ModularMatrix {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        };
        assert!(m.det().is_one(), "determinant drifted in compose");
        m
    }

    pub fn pow(&self, n: i32) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    /// Membership in `Gamma(T, T1)`: `a = d = 1 mod lcm(T, T1)`,
    /// `b = 0 mod T`, `c = 0 mod T1`.
    pub fn is_in_gamma(&self, t: u64, t1: u64) -> bool {
        if t == 0 || t1 == 0 {
            return false;
        }
        let n = BigInt::from(t.lcm(&t1));
        let one = BigInt::one().mod_floor(&n);
        self.a.mod_floor(&n) == one
            && self.d.mod_floor(&n) == one
            && self.b.mod_floor(&BigInt::from(t)).is_zero()
            && self.c.mod_floor(&BigInt::from(t1)).is_zero()
    }

    fn entry_f<T: Float + FromPrimitive>(x: &BigInt) -> T {
        T::from_f64(x.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(T::nan)
    }

    /// `c tau + d`.
    pub fn automorphy<T: Float + FromPrimitive>(&self, tau: Complex<T>) -> Complex<T> {
        tau * Self::entry_f::<T>(&self.c) + Self::entry_f::<T>(&self.d)
    }

    /// `(a tau + b)/(c tau + d)`.
    pub fn mobius<T: Float + FromPrimitive>(
        &self,
        p: &HalfPlanePoint<T>,
    ) -> Result<HalfPlanePoint<T>> {
        let tau = p.tau();
        let den = self.automorphy(tau);
        if den.norm_sqr().is_zero() {
            return Err(Error::Pole(format!(
                "{:?}",
                (tau.re.to_f64(), tau.im.to_f64())
            )));
        }
        let num = tau * Self::entry_f::<T>(&self.a) + Self::entry_f::<T>(&self.b);
        HalfPlanePoint::new(num / den)
    }

    /// `(c tau + d)^{-k}` on the principal branch.
    pub fn slash_factor<T: Float + FromPrimitive>(
        &self,
        k: &Rational,
        p: &HalfPlanePoint<T>,
    ) -> Complex<T> {
        let z = self.automorphy(p.tau());
        if k.is_integer() {
            let n = k.to_integer().to_i32().expect("weight out of range");
            return z.powi(-n);
        }
        let kf = T::from_f64(rational_to_f64(k)).unwrap_or_else(T::nan);
        z.powf(-kf)
    }

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for ModularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl std::str::FromStr for ModularMatrix {
    type Err = Error;

    /// `a,b,c,d`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<BigInt> = s
            .split(',')
            .map(|x| x.trim().parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidArgument(format!("bad matrix {s:?}: {e}")))?;
        match parts.as_slice() {
            [a, b, c, d] => ModularMatrix::new(a.clone(), b.clone(), c.clone(), d.clone()),
            _ => Err(Error::InvalidArgument(format!(
                "matrix {s:?} needs four entries"
            ))),
        }
    }
}

/// A point `tau` with `Im(tau) > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint<T = f64> {
    tau: Complex<T>,
}

impl<T: Float> HalfPlanePoint<T> {
    pub fn new(tau: Complex<T>) -> Result<Self> {
        if tau.im > T::zero() && tau.re.is_finite() && tau.im.is_finite() {
            Ok(HalfPlanePoint { tau })
        } else {
            Err(Error::NotInUpperHalfPlane(format!(
                "{}{:+}i",
                tau.re.to_f64().unwrap_or(f64::NAN),
                tau.im.to_f64().unwrap_or(f64::NAN)
            )))
        }
    }

    pub fn tau(&self) -> Complex<T> {
        self.tau
    }
}

impl HalfPlanePoint<f64> {
    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex::new(re, im))
    }
}

impl fmt::Display for HalfPlanePoint<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.tau.re, self.tau.im)
    }
}

/// A commuting pair `(g^i, h^j)` in a cyclic group `Z_n`, written additively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectorPair {
    n: u32,
    i: u32,
    j: u32,
}

impl SectorPair {
    pub fn new(n: u32, i: u32, j: u32) -> Result<Self> {
        if n == 0 || i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "pair ({i},{j}) is not in Z_{n} x Z_{n}"
            )));
        }
        Ok(SectorPair { n, i, j })
    }

    pub(crate) const fn from_raw(n: u32, i: u32, j: u32) -> Self {
        SectorPair { n, i, j }
    }

    pub fn group_order(&self) -> u32 {
        self.n
    }

    pub fn g(&self) -> u32 {
        self.i
    }

    pub fn h(&self) -> u32 {
        self.j
    }

    /// Right action `(g, h) gamma = (g^a h^c, g^b h^d)`.
    pub fn act(&self, x: &ModularMatrix) -> SectorPair {
        let n = BigInt::from(self.n);
        let (i, j) = (BigInt::from(self.i), BigInt::from(self.j));
        let reduce = |v: BigInt| v.mod_floor(&n).to_u32().expect("reduced below n");
        SectorPair {
            n: self.n,
            i: reduce(&x.a * &i + &x.c * &j),
            j: reduce(&x.b * &i + &x.d * &j),
        }
    }
}

pub fn compose(x: &ModularMatrix, y: &ModularMatrix) -> ModularMatrix {
    x.compose(y)
}

pub fn is_in_gamma(x: &ModularMatrix, t: u64, t1: u64) -> bool {
    x.is_in_gamma(t, t1)
}

pub fn mobius(x: &ModularMatrix, p: &HalfPlanePoint) -> Result<HalfPlanePoint> {
    x.mobius(p)
}

pub fn act_on_pair(p: &SectorPair, x: &ModularMatrix) -> SectorPair {
    p.act(x)
}

pub fn slash_factor(k: &Rational, x: &ModularMatrix, p: &HalfPlanePoint) -> Complex<f64> {
    x.slash_factor(k, p)
}
