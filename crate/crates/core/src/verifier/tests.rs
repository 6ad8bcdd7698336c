use num_complex::Complex64;

use super::*;
use crate::qseries::rat;
use crate::specfun::{dedekind_eta, jacobi_theta, Theta};

fn pts(v: &[(f64, f64)]) -> Vec<HalfPlanePoint> {
    v.iter()
        .map(|(a, b)| HalfPlanePoint::from_parts(*a, *b).unwrap())
        .collect()
}

#[test]
fn series_equal_examples() {
    let o = rat(30, 1);
    let t3 = jacobi_theta(Theta::Three, &o);
    let t4 = jacobi_theta(Theta::Four, &o);
    let r = check_series_equal("t4 vs t3", &t4.clone().into(), &t3.clone().into()).unwrap();
    assert!(!r.passed);
    let mm = &r.details[1]["first_mismatch"];
    assert_eq!(mm["exponent"], serde_json::json!({"num": 1, "den": 2}));
    assert_eq!(mm["left"]["num"], -2);
    assert_eq!(mm["right"]["num"], 2);
    assert!(
        check_series_equal("same", &t3.clone().into(), &t3.clone().into())
            .unwrap()
            .passed
    );
    assert_eq!(
        check_series_equal("cx", &t3.to_complex().into(), &t3.into()).unwrap_err(),
        Error::WrongDomain
    );
}

#[test]
fn insufficient_order_is_not_a_pass() {
    let o = rat(2, 1);
    let r = check_exact(
        "low",
        &jacobi_theta(Theta::One, &o),
        &ExactSeries::zero(o.clone()),
        &rat(50, 1),
    );
    assert!(!r.passed);
    assert!(r
        .details
        .iter()
        .any(|d| d.get("insufficient_order").is_some()));
}

#[test]
fn eta_transformation_laws() {
    let eta = dedekind_eta(&rat(60, 1));
    let t = TransformSpec::new(
        ModularMatrix::t(),
        rat(0, 1),
        pts(&[(0.0, 2.0), (1.0, 2.0)]),
        1e-10,
    )
    .with_multiplier(Complex64::from_polar(1.0, std::f64::consts::PI / 12.0));
    let r = check_transform_numeric("T", &eta, &eta, &t).unwrap();
    assert!(r.passed, "{}", r.to_text());

    let s = TransformSpec::new(ModularMatrix::s(), rat(1, 2), pts(&[(0.0, 2.0)]), 1e-10)
        .with_factor(AutomorphyFactor::MinusITau);
    let r = check_transform_numeric("S", &eta, &eta, &s).unwrap();
    assert!(r.passed, "{}", r.to_text());

    // the same law through the principal (c tau + d)^{1/2} with multiplier e^{-i pi/4}
    let s2 = TransformSpec::new(
        ModularMatrix::s(),
        rat(1, 2),
        pts(&[(0.0, 2.0), (0.5, 1.5)]),
        1e-10,
    )
    .with_multiplier(Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4));
    assert!(
        check_transform_numeric("S'", &eta, &eta, &s2)
            .unwrap()
            .passed
    );

    // a wrong multiplier must fail
    let bad = TransformSpec::new(ModularMatrix::t(), rat(0, 1), pts(&[(0.0, 2.0)]), 1e-10);
    assert!(
        !check_transform_numeric("bad", &eta, &eta, &bad)
            .unwrap()
            .passed
    );
}

#[test]
fn transform_check_reports_convergence_failure() {
    let eta = dedekind_eta(&rat(60, 1));
    let spec = TransformSpec::new(ModularMatrix::s(), rat(1, 2), pts(&[(0.0, 0.01)]), 1e-10);
    assert!(matches!(
        check_transform_numeric("far", &eta, &eta, &spec),
        Err(Error::InsufficientConvergence { .. })
    ));
}

#[test]
fn closure_scan_examples() {
    let order = rat(60, 1);
    let points = pts(&[(0.0, 2.0), (0.0, 3.0), (1.0, 2.0)]);

    let out = closure_scan(
        SectorId::one_sigma(),
        &ModularMatrix::s(),
        &points,
        1e-8,
        &order,
    )
    .unwrap();
    assert_eq!(out.target, SectorId::sigma_one());
    assert!((out.scalar - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    assert!(out.report.passed, "{}", out.report.to_text());

    let out = closure_scan(
        SectorId::sigma_sigma(),
        &ModularMatrix::t(),
        &points,
        1e-8,
        &order,
    )
    .unwrap();
    assert_eq!(out.target, SectorId::sigma_one());
    let expect = Complex64::from_polar(1.0, -std::f64::consts::PI / 12.0);
    assert!((out.scalar - expect).norm() < 1e-8);
    assert!(out.report.passed);

    let out = closure_scan(
        SectorId::one_sigma(),
        &ModularMatrix::t(),
        &points,
        1e-8,
        &order,
    )
    .unwrap();
    assert_eq!(out.target, SectorId::one_sigma());
    assert!((out.scalar - Complex64::from_polar(1.0, std::f64::consts::PI / 6.0)).norm() < 1e-8);

    assert!(matches!(
        closure_scan(
            SectorId::one_one(),
            &ModularMatrix::s(),
            &points,
            1e-8,
            &order
        ),
        Err(Error::DegenerateSector(_))
    ));
}

#[test]
fn suites_parse() {
    assert!("identities".parse::<Suite>().is_ok());
    assert!("unknown".parse::<Suite>().is_err());
}

#[test]
fn every_suite_passes() {
    let reports = run_suite(Suite::All, &SuiteConfig::default()).unwrap();
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.ok())
        .map(|r| r.to_text())
        .collect();
    assert!(bad.is_empty(), "{bad:#?}");
}
