mod common;

use std::f64::consts::{E, PI};

use common::oracles::{central_diff, erf_series, lambert_wm1_bisect, theta2_partial};
use jtheta::specfun::*;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn theta2_matches_brute_force_partial_sums() {
    for &q in &[1e-6, 0.01, 0.1, 0.5, 0.8, 0.9] {
        let v = theta2_zero(q).unwrap();
        let brute = theta2_partial(q, 50);
        assert!(((v - brute) / brute).abs() < 1e-14, "q = {q}: {v} vs {brute}");
    }
    assert_eq!(theta2_zero(0.0).unwrap(), 0.0);
    assert!(theta2_zero(1.0).is_err());
    assert!(theta2_zero(-0.1).is_err());
}

#[test]
fn theta2_is_strictly_increasing() {
    let mut prev = theta2_zero(0.0).unwrap();
    for i in 1..=100 {
        let q = 0.99 * i as f64 / 100.0;
        let v = theta2_zero(q).unwrap();
        assert!(v > prev, "q = {q}");
        prev = v;
    }
}

#[test]
fn truncation_at_64_terms_is_converged() {
    // Up to q = 0.99; beyond that 64 terms no longer reach 1e-14 relative.
    let short = SeriesTolerance::new(1e-15, 64).unwrap();
    let long = SeriesTolerance::new(1e-15, 128).unwrap();
    for i in 1..=990 {
        let q = i as f64 / 1000.0;
        let a = theta2_zero_with(q, short).unwrap();
        let b = theta2_zero_with(q, long).unwrap();
        assert!(((a - b) / b).abs() < 1e-14, "q = {q}");
    }
}

#[test]
fn qderiv_series_direct_and_as_derivative() {
    let q: f64 = 0.1;
    let direct = 2.0 * q.powf(1.25) + 6.0 * q.powf(5.25) + 12.0 * q.powf(11.25) + 20.0 * q.powf(19.25);
    let v = theta2_qderiv_series(q).unwrap();
    assert!(((v - direct) / direct).abs() < 1e-15);
    assert!(theta2_qderiv_series(1e-300).unwrap() < 1e-300);
    assert!(theta2_qderiv_series(0.0).is_err());

    // dθ₂/dq = θ₂/(4q) + 2S(q).
    for &q in &[0.05, 0.3, 0.6, 0.9] {
        let s = theta2_qderiv_series(q).unwrap();
        let analytic = theta2_zero(q).unwrap() / (4.0 * q) + 2.0 * s;
        let fd = central_diff(|t| theta2_zero(t).unwrap(), q, 1e-6);
        assert!(((analytic - fd) / analytic).abs() < 1e-8, "q = {q}");
    }
}

#[test]
fn lambert_residual_on_log_grid() {
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        // |y| from 1e-12 up to just below 1/e.
        let t = i as f64 / 999.0;
        let y = -(1e-12f64.ln() * (1.0 - t) + (1.0 / E).ln() * t).exp() * (1.0 - 1e-15 * t);
        let w = lambert_w_m1(y).unwrap();
        assert!(w <= -1.0);
        let rel = (w * w.exp() - y).abs() / y.abs();
        worst = worst.max(rel);
    }
    assert!(worst < 1e-12, "worst residual {worst:e}");
}

#[test]
fn lambert_reference_points() {
    assert_eq!(lambert_w_m1(-1.0 / E).unwrap(), -1.0);
    let w = lambert_w_m1(-0.1).unwrap();
    assert!((w - lambert_wm1_bisect(-0.1)).abs() < 1e-12);
    assert!((w - (-3.5771520639572971)).abs() < 1e-13);
    let y = -PI / 32.0;
    assert!((lambert_w_m1(y).unwrap() - lambert_wm1_bisect(y)).abs() < 1e-12);
    assert!(lambert_w_m1(0.0).is_err());
    assert!(lambert_w_m1(-0.4).is_err());
    assert!(lambert_w_m1(f64::NAN).is_err());
}

#[test]
fn csch_reference_values() {
    let t = 1.3;
    let v = csch_complex(Complex64::new(t, 0.0)).unwrap();
    assert!((v.re - 1.0 / t.sinh()).abs() < 1e-15 && v.im == 0.0);
    let v = csch_complex(Complex64::new(0.0, PI / 2.0)).unwrap();
    assert!((v - Complex64::new(0.0, -1.0)).norm() < 1e-15);

    // sinh(1 + i) from its Maclaurin series.
    let z = Complex64::new(1.0, 1.0);
    let mut term = z;
    let mut sinh = z;
    for k in 1..30 {
        term = term * z * z / ((2 * k) * (2 * k + 1)) as f64;
        sinh += term;
    }
    assert!((csch_complex(z).unwrap() - sinh.inv()).norm() < 1e-15);

    for k in [-2.0, 1.0, 3.0] {
        assert!(csch_complex(Complex64::new(0.0, k * PI)).is_err());
    }
}

proptest! {
    #[test]
    fn csch_conjugate_symmetry(re in -30.0f64..30.0, im in -30.0f64..30.0) {
        prop_assume!(re.abs() > 1e-3);
        let z = Complex64::new(re, im);
        let a = csch_complex(z.conj()).unwrap();
        let b = csch_complex(z).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-15 * b.norm().max(1e-300));
    }
}

#[test]
fn harmonic_numbers() {
    assert_eq!(harmonic(1, 1).unwrap(), 1.0);
    assert!((harmonic(4, 1).unwrap() - 25.0 / 12.0).abs() < 1e-15);
    let h = harmonic(1_000_000, 2).unwrap();
    assert!(h < ZETA2);
    assert!((ZETA2 - h).abs() < 1.1e-6);
    assert!(harmonic(999_999, 2).unwrap() < h);
    assert!(harmonic(0, 1).is_err());
}

#[test]
fn erf_against_maclaurin_series() {
    assert_eq!(erf(0.0), 0.0);
    assert!(erf(6.0) > 1.0 - 1e-15);
    assert!((erf(1.0) - 0.8427007929497149).abs() < 2.5e-16);
    // The alternating series loses digits to cancellation past x ≈ 2.
    for i in 1..=20 {
        let x = i as f64 * 0.1;
        let a = erf(x);
        let b = erf_series(x);
        assert!((a - b).abs() < 2e-15, "x = {x}: {a} vs {b}");
        assert_eq!(erf(-x), -a);
        assert!((erfc(x) - (1.0 - b)).abs() < 2e-15);
    }
    // 30-digit reference values.
    for &(x, v) in &[
        (2.5, 0.99959304798255504106),
        (2.9, 0.99995890212190054114),
        (3.5, 0.99999925690162765859),
        (4.0, 0.99999998458274209972),
    ] {
        assert!((erf(x) - v).abs() < 2e-16, "x = {x}");
    }
    assert!((erfc(4.0) / 1.541725790028001885e-8 - 1.0).abs() < 1e-14);
}

#[test]
fn erf_inv_round_trip() {
    for i in 1..200 {
        let y = -1.0 + i as f64 / 100.0;
        let x = erf_inv(y).unwrap();
        assert!((erf(x) - y).abs() < 2e-15, "y = {y}");
    }
    assert!(erf_inv(1.0).is_err());
}
