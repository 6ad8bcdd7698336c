#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use qtrace::modgroup::{HalfPlanePoint, ModularMatrix, SectorPair};
use qtrace::{ExactSeries, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

/// Random exact Laurent-Puiseux series: up to 8 terms on a `1/D` grid, truncated near order 20.
pub fn exact_series() -> impl Strategy<Value = ExactSeries> {
    let grid = prop::sample::select(vec![1i64, 2, 3, 4, 6, 8, 24]);
    let order = prop::sample::select(vec![q(20, 1), q(39, 2), q(62, 3)]);
    (
        grid,
        order,
        -6i64..6,
        prop::collection::vec((0i64..40, small_rational()), 0..8),
    )
        .prop_map(|(d, order, offset, terms)| {
            let terms = terms.into_iter().map(|(i, c)| (q(offset + i, d), c));
            ExactSeries::from_terms(order, terms)
        })
}

/// A series with nonzero leading coefficient, i.e. a unit.
pub fn unit_series() -> impl Strategy<Value = ExactSeries> {
    exact_series().prop_filter("needs a leading term", |s| !s.is_zero())
}

pub fn rescale_factor() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![q(1, 1), q(2, 1), q(3, 1), q(1, 2), q(2, 3), q(5, 4)])
}

fn generator() -> impl Strategy<Value = ModularMatrix> {
    prop::sample::select(vec![0u8, 1, 2, 3]).prop_map(|g| match g {
        0 => ModularMatrix::s(),
        1 => ModularMatrix::t(),
        2 => ModularMatrix::t().inverse(),
        _ => ModularMatrix::s().neg(),
    })
}

/// Random element of SL(2,Z) as a word of up to 10 generators.
pub fn sl2z() -> impl Strategy<Value = ModularMatrix> {
    prop::collection::vec(generator(), 0..10).prop_map(|w| {
        w.iter()
            .fold(ModularMatrix::identity(), |acc, g| acc.compose(g))
    })
}

/// Random element of Gamma(T, T1) built from its unipotent generators and `-I` squared away.
pub fn gamma_element(t: u64, t1: u64) -> impl Strategy<Value = ModularMatrix> {
    let t = t as i64;
    let t1 = t1 as i64;
    prop::collection::vec((any::<bool>(), -3i64..=3), 0..8).prop_map(move |w| {
        w.iter().fold(ModularMatrix::identity(), |acc, (upper, k)| {
            let g = if *upper {
                ModularMatrix::new(1, t * k, 0, 1).unwrap()
            } else {
                ModularMatrix::new(1, 0, t1 * k, 1).unwrap()
            };
            acc.compose(&g)
        })
    })
}

pub fn sector_pair() -> impl Strategy<Value = SectorPair> {
    (1u32..=6)
        .prop_flat_map(|n| (Just(n), 0..n, 0..n))
        .prop_map(|(n, i, j)| SectorPair::new(n, i, j).unwrap())
}

pub fn point() -> impl Strategy<Value = HalfPlanePoint> {
    (-2.0f64..2.0, 0.2f64..3.0).prop_map(|(re, im)| HalfPlanePoint::from_parts(re, im).unwrap())
}

/// Order-truncated equality, the meaning of "identity holds at series level".
pub fn same(a: &ExactSeries, b: &ExactSeries) -> bool {
    a.agrees_with(b)
}

/// `(T, T1, x, y)` with `x, y` in `Gamma(T, T1)`.
pub fn gamma_pair() -> impl Strategy<Value = (u64, u64, ModularMatrix, ModularMatrix)> {
    (1u64..=4, 1u64..=4).prop_flat_map(|(t, t1)| {
        (
            Just(t),
            Just(t1),
            gamma_element(t, t1),
            gamma_element(t, t1),
        )
    })
}
