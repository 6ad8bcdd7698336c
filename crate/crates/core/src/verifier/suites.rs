//! The check batteries behind `qtrace check --suite ...`.
//!
//! Every order, tolerance and sample point below is pinned; `SuiteConfig`
//! overrides apply uniformly when given on the command line.

use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde_json::json;

use super::{
    check_exact, check_transform_numeric, closure_scan, AutomorphyFactor, CheckReport,
    TransformSpec,
};
use crate::error::{Error, Result};
use crate::lattice::{
    character, distinct_parts_sigma_one_character, eta_theta_form, l0_inserted_trace, SectorId,
};
use crate::modgroup::{HalfPlanePoint, ModularMatrix};
use crate::qseries::{rat, rational_to_json, PuiseuxSeries};
use crate::specfun::{
    bernoulli_numbers, dedekind_eta, eisenstein, jacobi_theta, q_twisted, Theta, TwistParams,
};
use crate::{ExactSeries, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Transforms,
    Closure,
    Eisenstein,
    Qk,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "transforms" => Suite::Transforms,
            "closure" => Suite::Closure,
            "eisenstein" => Suite::Eisenstein,
            "qk" => Suite::Qk,
            "all" => Suite::All,
            other => return Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub order: Option<Rational>,
    pub tolerance: Option<f64>,
    pub points: Option<Vec<HalfPlanePoint>>,
}

impl SuiteConfig {
    fn order(&self, pinned: i64) -> Rational {
        self.order.clone().unwrap_or_else(|| rat(pinned, 1))
    }

    fn tol(&self, pinned: f64) -> f64 {
        self.tolerance.unwrap_or(pinned)
    }

    fn points(&self, pinned: &[(f64, f64)]) -> Vec<HalfPlanePoint> {
        self.points.clone().unwrap_or_else(|| {
            pinned
                .iter()
                .map(|(re, im)| HalfPlanePoint::from_parts(*re, *im).expect("pinned point"))
                .collect()
        })
    }
}

/// Default exact-check orders.
const EXACT_ORDER: i64 = 30;
const VANISHING_ORDER: i64 = 50;
const ONE_POINT_ORDER: i64 = 20;
/// Default numeric evaluation order.
const NUMERIC_ORDER: i64 = 60;
const Q2_NUMERIC_ORDER: i64 = 400;

const ETA_POINTS: [(f64, f64); 2] = [(0.0, 2.0), (1.0, 2.0)];
const SINGLE_POINT: [(f64, f64); 1] = [(0.0, 2.0)];
const S_CLOSURE_POINTS: [(f64, f64); 2] = [(0.0, 2.0), (0.0, 3.0)];
const SCAN_POINTS: [(f64, f64); 3] = [(0.0, 2.0), (0.0, 3.0), (1.0, 2.0)];

/// Run a suite. Reports come back sorted by name. Convergence or
/// precondition failures abort the run with an error.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let mut reports = match suite {
        Suite::Identities => identities(cfg)?,
        Suite::Transforms => transforms(cfg)?,
        Suite::Closure => closure(cfg)?,
        Suite::Eisenstein => eisenstein_suite(cfg)?,
        Suite::Qk => qk(cfg)?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Identities,
                Suite::Transforms,
                Suite::Closure,
                Suite::Eisenstein,
                Suite::Qk,
            ] {
                all.extend(run_suite(s, cfg)?);
            }
            all
        }
    };
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

fn zero(order: &Rational) -> ExactSeries {
    ExactSeries::zero(order.clone())
}

fn identities(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();

    let o50 = cfg.order(VANISHING_ORDER);
    let required50 = rat(VANISHING_ORDER, 1);
    out.push(check_exact(
        "theta1 vanishes",
        &jacobi_theta(Theta::One, &o50),
        &zero(&o50),
        &required50,
    ));
    out.push(check_exact(
        "character (1,1) vanishes",
        &character(SectorId::one_one(), &o50).series,
        &zero(&o50),
        &required50,
    ));

    let o30 = cfg.order(EXACT_ORDER);
    let required30 = rat(EXACT_ORDER, 1);
    for s in SectorId::ALL {
        out.push(check_exact(
            &format!("character {s} = eta^-1 theta{}", theta_index(s)),
            &character(s, &o30).series,
            &eta_theta_form(s, &o30),
            &required30,
        ));
    }
    out.push(
        check_exact(
            "character (sigma,1) with prod(1+q^n) factor = eta^-1 theta4",
            &distinct_parts_sigma_one_character(&o30),
            &eta_theta_form(SectorId::sigma_one(), &o30),
            &required30,
        )
        .expecting_failure("prod(1+q^n) in place of sum P(n) q^n does not give eta^-1 theta4"),
    );

    // theta-eta relations; eta(2 tau), eta(tau/2) are rescalings
    let inner = &o30 + Rational::one();
    let eta = dedekind_eta(&inner);
    let eta2 = dedekind_eta(&(&inner / rat(2, 1))).rescale(&rat(2, 1))?;
    let eta_half = dedekind_eta(&(&inner * rat(2, 1))).rescale(&rat(1, 2))?;
    let eta_inv = eta.invert()?;
    let two = ExactSeries::constant(rat(2, 1), inner.clone());
    let rhs2 = two.mul(&eta2.pow(2)?).mul(&eta_inv);
    let rhs3 = eta
        .pow(5)?
        .mul(&eta2.pow(2)?.mul(&eta_half.pow(2)?).invert()?);
    let rhs4 = eta_half.pow(2)?.mul(&eta_inv);
    for (t, rhs, label) in [
        (Theta::Two, rhs2, "theta2 = 2 eta(2tau)^2 / eta(tau)"),
        (
            Theta::Three,
            rhs3,
            "theta3 = eta(tau)^5 / (eta(2tau)^2 eta(tau/2)^2)",
        ),
        (Theta::Four, rhs4, "theta4 = eta(tau/2)^2 / eta(tau)"),
    ] {
        let lhs = jacobi_theta(t, &o30);
        out.push(check_exact(label, &lhs, &rhs.truncate(&o30), &required30));
    }

    out.push(check_exact(
        "theta3(tau+1) = theta4(tau)",
        &jacobi_theta(Theta::Three, &o30).shift_tau(&Rational::one())?,
        &jacobi_theta(Theta::Four, &o30),
        &required30,
    ));
    let eta30 = dedekind_eta(&o30);
    out.push(check_exact(
        "eta * eta^-1 = 1",
        &eta30.mul(&eta30.invert()?),
        &ExactSeries::one(o30.clone()),
        &rat(EXACT_ORDER - 1, 1),
    ));

    let o20 = cfg.order(ONE_POINT_ORDER);
    for s in SectorId::ALL {
        out.push(check_exact(
            &format!("one-point L(0)-c/24 trace {s} = q d/dq character"),
            &l0_inserted_trace(s, &o20),
            &character(s, &o20).series.q_d_dq(),
            &rat(ONE_POINT_ORDER, 1),
        ));
    }
    Ok(out)
}

fn theta_index(s: SectorId) -> u8 {
    match s.theta() {
        Theta::One => 1,
        Theta::Two => 2,
        Theta::Three => 3,
        Theta::Four => 4,
    }
}

fn transforms(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let order = cfg.order(NUMERIC_ORDER);
    let eta = dedekind_eta(&order);
    let mut out = Vec::new();

    let t_law = TransformSpec::new(
        ModularMatrix::t(),
        Rational::zero(),
        cfg.points(&ETA_POINTS),
        cfg.tol(1e-10),
    )
    .with_multiplier(Complex64::from_polar(1.0, std::f64::consts::PI / 12.0));
    out.push(check_transform_numeric(
        "eta(tau+1) = e^(pi i/12) eta(tau)",
        &eta,
        &eta,
        &t_law,
    )?);

    let s_law = TransformSpec::new(
        ModularMatrix::s(),
        rat(1, 2),
        cfg.points(&ETA_POINTS),
        cfg.tol(1e-10),
    )
    .with_factor(AutomorphyFactor::MinusITau);
    out.push(check_transform_numeric(
        "eta(-1/tau) = (-i tau)^(1/2) eta(tau)",
        &eta,
        &eta,
        &s_law,
    )?);

    // eta((tau+1)/2) as a series in q: rescale by 1/2, then shift by 1
    let lhs = dedekind_eta(&(&order * rat(2, 1)))
        .rescale(&rat(1, 2))?
        .to_complex()
        .shift_tau(&Rational::one())?;
    let eta2 = dedekind_eta(&(&order / rat(2, 1))).rescale(&rat(2, 1))?;
    let eta_half = dedekind_eta(&(&order * rat(2, 1))).rescale(&rat(1, 2))?;
    let rhs = eta.pow(3)?.mul(&eta_half.mul(&eta2).invert()?);
    // q^{1/24} at (tau+1)/2 carries the phase e^{pi i/24}
    let half = TransformSpec::new(
        ModularMatrix::identity(),
        Rational::zero(),
        cfg.points(&SINGLE_POINT),
        cfg.tol(1e-9),
    );
    out.push(check_transform_numeric(
        "eta((tau+1)/2) = e^(pi i/24) eta(tau)^3 / (eta(tau/2) eta(2tau))",
        &lhs,
        &rhs,
        &half
            .clone()
            .with_multiplier(Complex64::from_polar(1.0, std::f64::consts::PI / 24.0)),
    )?);
    out.push(
        check_transform_numeric(
            "eta((tau+1)/2) = eta(tau)^3 / (eta(tau/2) eta(2tau)) without phase",
            &lhs,
            &rhs,
            &half,
        )?
        .expecting_failure("the two sides differ by the constant e^(pi i/24)"),
    );
    Ok(out)
}

fn closure(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let order = cfg.order(NUMERIC_ORDER);
    let tol = cfg.tol(1e-8);
    let mut out = Vec::new();

    let s_spec = TransformSpec::new(
        ModularMatrix::s(),
        Rational::zero(),
        cfg.points(&S_CLOSURE_POINTS),
        tol,
    );
    for (src, dst) in [
        (SectorId::one_sigma(), SectorId::sigma_one()),
        (SectorId::sigma_sigma(), SectorId::sigma_sigma()),
        (SectorId::sigma_one(), SectorId::one_sigma()),
    ] {
        let f = character(src, &order).series;
        let g = character(dst, &order).series;
        let mut r = check_transform_numeric(
            &format!("S-closure T{src}(-1/tau) = T{dst}(tau)"),
            &f,
            &g,
            &s_spec,
        )?;
        let image = src.pair().act(&ModularMatrix::s());
        if image != dst.pair() {
            r.passed = false;
            r.details
                .push(json!({ "act_on_pair_mismatch": format!("{image:?}") }));
        }
        out.push(r);
    }

    let points = cfg.points(&SCAN_POINTS);
    for gamma in [ModularMatrix::t(), ModularMatrix::s()] {
        for s in [
            SectorId::one_sigma(),
            SectorId::sigma_sigma(),
            SectorId::sigma_one(),
        ] {
            out.push(closure_scan(s, &gamma, &points, tol, &order)?.report);
        }
    }
    Ok(out)
}

fn eisenstein_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let b = bernoulli_numbers(6);
    let factorial = |k: i64| (1..=k).product::<i64>();
    for (k, frozen) in [(2u32, rat(-1, 12)), (4, rat(1, 720)), (6, rat(-1, 30240))] {
        let from_recurrence = -b[k as usize].clone() / rat(factorial(k as i64), 1);
        let one = cfg.order(1).min(rat(1, 1));
        let constant = eisenstein(k, &one)?;
        let mut r = check_exact(
            &format!("E{k} constant term = -B_{k}/{k}!"),
            &constant,
            &ExactSeries::constant(from_recurrence.clone(), one.clone()),
            &rat(1, 1),
        );
        r.details
            .push(json!({ "derived_value": rational_to_json(&frozen) }));
        if from_recurrence != frozen {
            r.passed = false;
        }
        out.push(r);
    }

    let order = cfg.order(NUMERIC_ORDER);
    let points = cfg.points(&SINGLE_POINT);
    for k in [4u32, 6] {
        let e = eisenstein(k, &order)?;
        let spec = TransformSpec::new(
            ModularMatrix::s(),
            rat(k as i64, 1),
            points.clone(),
            cfg.tol(1e-8),
        );
        out.push(check_transform_numeric(
            &format!("E{k}(-1/tau) = tau^{k} E{k}(tau)"),
            &e,
            &e,
            &spec,
        )?);
    }
    out.push(e2_defect(cfg, &order)?);
    Ok(out)
}

/// `E_2(-1/tau) - tau^2 E_2(tau)` divided by `tau` is the constant `i/(2 pi)`.
fn e2_defect(cfg: &SuiteConfig, order: &Rational) -> Result<CheckReport> {
    let tol = cfg.tol(1e-8);
    let e2 = eisenstein(2, order)?;
    let s = ModularMatrix::s();
    let mut ratios = Vec::new();
    let mut max_tail = 0.0f64;
    let mut reliable = true;
    let mut details = Vec::new();
    for p in cfg.points(&S_CLOSURE_POINTS) {
        let tau = p.tau();
        let at_image = e2.evaluate(s.mobius(&p)?.tau())?;
        let at_tau = e2.evaluate(tau)?;
        let defect = at_image.value - tau * tau * at_tau.value;
        let ratio = defect / tau;
        let tail = (at_image.tail_estimate + tau.norm_sqr() * at_tau.tail_estimate) / tau.norm();
        max_tail = max_tail.max(tail);
        reliable &= at_image.reliable && at_tau.reliable;
        details.push(json!({ "tau": [tau.re, tau.im], "defect_over_tau": [ratio.re, ratio.im], "tail_estimate": tail }));
        ratios.push(ratio);
    }
    // i/(2 pi) for the -B_2/2! normalization
    let expected = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));
    let spread = ratios
        .iter()
        .map(|r| (r - expected).norm())
        .fold(0.0, f64::max);
    details.push(json!({ "expected_constant": [expected.re, expected.im] }));
    let passed = reliable && ratios.len() >= 2 && spread < tol && max_tail < tol / 10.0;
    Ok(CheckReport::numeric(
        "E2(-1/tau) - tau^2 E2(tau) = i tau/(2 pi)",
        passed,
        order.clone(),
        spread,
        max_tail,
        details,
    )
    .with_tolerance(tol))
}

fn qk(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    let o30 = cfg.order(EXACT_ORDER);
    let required = rat(EXACT_ORDER, 1);

    let trivial = TwistParams::new(0, 1, 0, 1)?;
    out.push(check_exact(
        "Q0 = -1",
        &q_twisted::<Rational>(0, &trivial, &o30)?,
        &ExactSeries::constant(rat(-1, 1), o30.clone()),
        &required,
    ));

    let mut all_periodic = true;
    let mut details = Vec::new();
    let mut min_order = o30.clone();
    for (t, t1) in [(1u64, 1u64), (1, 2), (2, 1), (2, 2)] {
        for j in 0..t {
            for l in 0..t1 {
                let tw = TwistParams::new(j, t, l, t1)?;
                for k in 0..=4u32 {
                    if k >= 1 && tw.is_trivial() {
                        continue;
                    }
                    let q: ExactSeries = q_twisted(k, &tw, &o30)?;
                    let r = check_exact("", &q.shift_tau(&rat(t as i64, 1))?, &q, &required);
                    all_periodic &= r.passed;
                    min_order = min_order.min(r.order_used.clone());
                    details.push(json!({ "k": k, "twist": [j, t, l, t1], "passed": r.passed }));
                }
            }
        }
    }
    out.push(CheckReport::exact(
        "Qk(tau+T) = Qk(tau), k <= 4, T,T1 <= 2",
        all_periodic,
        min_order,
        details,
    ));

    let mu_minus = TwistParams::new(1, 2, 0, 1)?;
    out.push(check_exact(
        "Q1(mu=-1, lambda=1) = 0",
        &q_twisted::<Rational>(1, &mu_minus, &o30)?,
        &zero(&o30),
        &required,
    ));
    let one = rat(1, 1);
    let leading = PuiseuxSeries::from_terms(
        one.clone(),
        vec![(Rational::zero(), rat(1, 24)), (rat(1, 2), rat(1, 1))],
    );
    out.push(check_exact(
        "Q2(mu=-1, lambda=1) = 1/24 + q^(1/2) + O(q)",
        &q_twisted::<Rational>(2, &mu_minus, &o30)?.truncate(&one),
        &leading,
        &one,
    ));

    let gamma = ModularMatrix::new(1, 0, 2, 1)?;
    let member = gamma.is_in_gamma(2, 1);
    let order = cfg.order(Q2_NUMERIC_ORDER);
    let q2: ExactSeries = q_twisted(2, &mu_minus, &order)?;
    let spec = TransformSpec::new(
        gamma.clone(),
        rat(2, 1),
        cfg.points(&[(0.0, 1.0)]),
        cfg.tol(1e-6),
    );
    let mut r = check_transform_numeric(
        "Q2(mu=-1, lambda=1) weight 2 under (1,0;2,1) in Gamma(2,1)",
        &q2,
        &q2,
        &spec,
    )?;
    r.details
        .push(json!({ "gamma": gamma.to_csv(), "in_gamma_2_1": member }));
    r.passed &= member;
    out.push(r);
    Ok(out)
}
