mod common;

use common::*;
use proptest::prelude::*;
use qtrace::modgroup::ModularMatrix;
use qtrace::ExactSeries;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(a in exact_series(), b in exact_series(), c in exact_series()) {
        prop_assert!(same(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
        prop_assert!(same(&a.mul(&b), &b.mul(&a)));
        prop_assert!(same(&a.add(&b), &b.add(&a)));
        prop_assert!(same(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(same(&a.sub(&a), &ExactSeries::zero(a.order().clone())));
    }

    #[test]
    fn grid_closure(a in exact_series(), b in exact_series()) {
        for s in [a.add(&b), a.mul(&b), a.sub(&b), a.q_d_dq()] {
            prop_assert!(s.is_well_formed(), "{s:?}");
        }
    }

    #[test]
    fn q_d_dq_is_a_derivation(a in exact_series(), b in exact_series()) {
        let lhs = a.mul(&b).q_d_dq();
        let rhs = a.q_d_dq().mul(&b).add(&a.mul(&b.q_d_dq()));
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn invert_is_two_sided(a in unit_series()) {
        let inv = a.invert().unwrap();
        let p = a.mul(&inv);
        let r = inv.mul(&a);
        prop_assert!(same(&p, &ExactSeries::one(p.order().clone())), "{a} * {inv} = {p}");
        prop_assert!(same(&r, &ExactSeries::one(r.order().clone())));
        prop_assert!(p.is_well_formed() && inv.is_well_formed());
    }

    #[test]
    fn rescale_is_a_ring_homomorphism(a in exact_series(), b in exact_series(), r in rescale_factor()) {
        let f = |s: &ExactSeries| s.rescale(&r).unwrap();
        prop_assert!(same(&f(&a.add(&b)), &f(&a).add(&f(&b))));
        prop_assert!(same(&f(&a.mul(&b)), &f(&a).mul(&f(&b))));
        prop_assert!(f(&a).is_well_formed());
    }

    #[test]
    fn right_action_law(p in sector_pair(), x in sl2z(), y in sl2z()) {
        prop_assert_eq!(p.act(&x).act(&y), p.act(&x.compose(&y)));
        prop_assert_eq!(p.act(&ModularMatrix::identity()), p);
    }

    #[test]
    fn gamma_closure((t, t1, x, y) in gamma_pair()) {
        prop_assert!(x.is_in_gamma(t, t1) && y.is_in_gamma(t, t1));
        prop_assert!(x.compose(&y).is_in_gamma(t, t1));
        prop_assert!(x.inverse().is_in_gamma(t, t1));
    }

    #[test]
    fn gamma_membership_matches_congruences(x in sl2z(), t in 1i64..=4, t1 in 1i64..=4) {
        let n = num_integer::lcm(t, t1);
        let m = |v: &num_bigint::BigInt, k: i64| v.clone() % k;
        let fold = |v: num_bigint::BigInt, k: i64| ((v % k) + k) % k;
        let expect = fold(m(x.a(), n), n) == (1 % n).into()
            && fold(m(x.d(), n), n) == (1 % n).into()
            && fold(m(x.b(), t), t) == 0.into()
            && fold(m(x.c(), t1), t1) == 0.into();
        prop_assert_eq!(x.is_in_gamma(t as u64, t1 as u64), expect);
    }

    #[test]
    fn mobius_is_a_left_action(x in sl2z(), y in sl2z(), p in point()) {
        let direct = x.compose(&y).mobius(&p).unwrap();
        let nested = x.mobius(&y.mobius(&p).unwrap()).unwrap();
        prop_assert!(direct.tau().im > 0.0);
        let scale = 1.0 + direct.tau().norm();
        prop_assert!((direct.tau() - nested.tau()).norm() < 1e-9 * scale * scale);
    }
}
