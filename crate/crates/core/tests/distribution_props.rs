mod common;

use std::f64::consts::PI;

use common::oracles::{cdf_by_inversion, central_diff, log_space, simpson_log};
use jtheta::approx::LogNormal;
use jtheta::sampling::{sample_many, SamplerMethod};
use jtheta::specfun::theta2_zero;
use jtheta::JacobiTheta;
use num_complex::Complex64;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn cdf_matches_talbot_inversion() {
    for &m in &[0.5, 1.0, 7.0, 100.0] {
        let p = JacobiTheta::new(m).unwrap();
        let lo = p.quantile(1e-3).unwrap();
        let hi = p.quantile(0.999).unwrap();
        for x in log_space(lo, hi, 50) {
            let oracle = cdf_by_inversion(m, x);
            assert!((p.cdf(x) - oracle).abs() < 1e-10, "m = {m}, x = {x}");
        }
    }
    let v = JacobiTheta::standard().cdf(10.0);
    assert!(v > 0.0 && v < 1.0);
    assert!((v - cdf_by_inversion(1.0, 10.0)).abs() < 1e-11);
}

#[test]
fn cdf_at_pi_matches_theta2_identity() {
    for &m in &[1.0, 3.5] {
        let p = JacobiTheta::new(m).unwrap();
        let via_theta = theta2_zero((-PI).exp()).unwrap();
        assert!(rel(p.cdf(m * PI), via_theta) < 1e-15);
    }
}

#[test]
fn pdf_is_the_derivative_of_cdf() {
    for &m in &[0.5, 1.0, 7.0] {
        let p = JacobiTheta::new(m).unwrap();
        let lo = p.quantile(1e-6).unwrap();
        let hi = p.quantile(1.0 - 1e-6).unwrap();
        for x in log_space(lo, hi, 200) {
            let fd = central_diff(|t| p.cdf(t), x, 1e-5 * x);
            let f = p.pdf(x);
            assert!(f >= 0.0);
            assert!(rel(f, fd) < 1e-6, "m = {m}, x = {x}: {f} vs {fd}");
        }
    }
}

#[test]
fn pdf_integrates_to_one() {
    for &m in &[0.5, 1.0, 7.0, 100.0] {
        let p = JacobiTheta::new(m).unwrap();
        let hi = p.quantile(1.0 - 1e-9).unwrap();
        let total = simpson_log(|x| p.pdf(x), 0.005 * m, hi, 4000);
        assert!((total - 1.0).abs() < 1e-6, "m = {m}: {total}");
    }
}

#[test]
fn cdf_shape_and_limits() {
    let p = JacobiTheta::new(7.0).unwrap();
    let mut prev = 0.0;
    for x in log_space(1e-3, 1e4, 2000) {
        let v = p.cdf(x);
        assert!(v >= prev && (0.0..=1.0).contains(&v));
        prev = v;
    }
    assert!(p.cdf(1e-9) < 1e-300);
    assert!(p.cdf(1e6 * 7.0) > 1.0 - 1e-9);
    for &x in &[-1.0, 0.0] {
        assert_eq!(p.cdf(x), 0.0);
        assert_eq!(p.pdf(x), 0.0);
    }
}

#[test]
fn mode_lies_left_of_mean() {
    let p = JacobiTheta::new(7.0).unwrap();
    let grid = log_space(0.5, 60.0, 20_000);
    let mode = grid
        .iter()
        .copied()
        .max_by(|a, b| p.pdf(*a).total_cmp(&p.pdf(*b)))
        .unwrap();
    assert!(mode < p.mean());
    // Unimodal: density increases up to the mode and decreases after it.
    let mut rising = true;
    let mut prev = 0.0;
    for &x in &grid {
        let f = p.pdf(x);
        if rising && f < prev {
            rising = false;
            assert!((x / mode - 1.0).abs() < 1e-3);
        }
        if !rising {
            assert!(f <= prev);
        }
        prev = f;
    }
}

#[test]
fn quantile_round_trip_and_median() {
    for &m in &[0.01, 1.0, 7.0, 1e5] {
        let p = JacobiTheta::new(m).unwrap();
        for &u in &[1e-12, 0.01, 0.1, 0.5, 0.9, 0.99, 1.0 - 1e-12] {
            let x = p.quantile(u).unwrap();
            assert!((p.cdf(x) - u).abs() < 1e-10, "m = {m}, u = {u}");
        }
    }
    let p = JacobiTheta::new(7.0).unwrap();
    let median = p.quantile(0.5).unwrap();
    let ln_median = LogNormal::matching(&p).median();
    assert!((median / ln_median - 1.0).abs() < 0.1);
    assert!(rel(median, 7.0 * 1.3697559784993264) < 1e-9);
    assert!(p.quantile(0.0).is_err());
    assert!(p.quantile(1.0).is_err());
}

proptest! {
    #[test]
    fn scale_family(m in 1e-3f64..1e3, s in 0.01f64..50.0, u in 1e-6f64..0.999999) {
        let p = JacobiTheta::new(m).unwrap();
        let x = s * m;
        let unit = JacobiTheta::standard();
        prop_assert!((p.cdf(x) - unit.cdf(x / m)).abs() <= 1e-14 * unit.cdf(x / m));
        prop_assert!((p.pdf(x) - unit.pdf(x / m) / m).abs() <= 1e-14 * unit.pdf(x / m) / m);
        let q = p.quantile(u).unwrap();
        let q1 = unit.quantile(u).unwrap();
        prop_assert!((q - m * q1).abs() <= 1e-12 * q);
    }
}

#[test]
fn laplace_transform_values() {
    let p = JacobiTheta::standard();
    assert_eq!(p.laplace_transform(0.0).unwrap(), 1.0);
    assert!(rel(p.laplace_transform(1.0).unwrap(), PI / PI.sinh()) < 1e-15);
    assert!(rel(p.laplace_transform(1.0).unwrap(), 0.27202905498213316) < 1e-15);
    let mut prev = 1.0;
    for a in log_space(1e-6, 1e4, 200) {
        let v = p.laplace_transform(a).unwrap();
        assert!(v < prev);
        prev = v;
    }
    assert!(p.laplace_transform(-1.0).is_err());
    // Slope at the origin is minus the mean.
    let q = JacobiTheta::new(7.0).unwrap();
    let h = 1e-6;
    let slope = (q.mgf(h).unwrap() - q.laplace_transform(h).unwrap()) / (2.0 * h);
    assert!(rel(slope, q.mean()) < 1e-4);
}

#[test]
fn mgf_values_and_domain() {
    let p = JacobiTheta::standard();
    assert_eq!(p.mgf(0.0).unwrap(), 1.0);
    assert!(rel(p.mgf(-1.0).unwrap(), p.laplace_transform(1.0).unwrap()) < 1e-15);
    let y = 0.5f64.sqrt() * PI;
    assert!(rel(p.mgf(0.5).unwrap(), y / y.sin()) < 1e-15);
    assert!(rel(p.mgf(0.5).unwrap(), 2.7918316566021180) < 1e-14);
    assert!(p.mgf(1.0 - 1e-9).unwrap() > 1e8);
    assert!(p.mgf(1.0).is_err());
    assert!(p.mgf(2.0).is_err());
    assert!(JacobiTheta::new(4.0).unwrap().mgf(0.25).is_err());
}

#[test]
fn spectrum_symmetries() {
    let p = JacobiTheta::new(7.0).unwrap();
    assert_eq!(p.spectrum_magnitude_sq(0.0), 1.0);
    assert_eq!(p.spectrum_phase(0.0), 0.0);
    for w in log_space(1e-3, 10.0, 100) {
        assert!(rel(p.spectrum_magnitude_sq(w), p.spectrum_magnitude_sq(-w)) < 1e-14);
        assert!((p.spectrum_phase(-w) + p.spectrum_phase(w)).abs() < 1e-14);
        assert!(rel(p.spectrum_magnitude_sq(w), p.characteristic(w).norm_sqr()) < 1e-12);
    }
    // Near 0 the phase rises like ω·E X.
    let mut prev = 0.0;
    for i in 1..=50 {
        let w = i as f64 * 0.002;
        let ph = p.spectrum_phase(w);
        assert!(ph > prev);
        prev = ph;
    }
    assert!(rel(p.spectrum_phase(1e-6), 1e-6 * p.mean()) < 1e-5);
}

#[test]
fn stats_and_moment_bound() {
    let s = JacobiTheta::new(6.0).unwrap().stats();
    assert!(rel(s.mean, PI * PI) < 1e-15);
    assert!((s.skewness - 1.81).abs() < 5e-3);
    assert!((s.kurtosis - 8.14).abs() < 5e-3);
    assert!((s.snr - 1.58).abs() < 5e-3);
    let unit = JacobiTheta::standard();
    assert!(rel(unit.moment_upper_bound(1).unwrap(), unit.mean()) < 1e-15);
    let b2 = unit.moment_upper_bound(2).unwrap();
    assert!((b2 - 5.411).abs() < 1e-3);
    assert!(b2 > unit.stats().second_moment);
    let two = JacobiTheta::new(2.0).unwrap();
    assert!(rel(two.moment_upper_bound(4).unwrap(), 24.0 * (PI * PI / 3.0).powi(4)) < 1e-14);
    assert!(unit.moment_upper_bound(0).is_err());
    assert!(unit.moment_upper_bound(400).is_err());
}

/// Exact-law draws shared by the Monte Carlo checks below.
fn draws(m: f64, n: usize, seed: u64) -> Vec<f64> {
    sample_many(&JacobiTheta::new(m).unwrap(), n, SamplerMethod::Inverse, seed).unwrap()
}

fn mean_and_se<I: Iterator<Item = f64>>(values: I) -> (f64, f64) {
    let (mut n, mut s, mut s2) = (0.0, 0.0, 0.0);
    for v in values {
        n += 1.0;
        s += v;
        s2 += v * v;
    }
    let mean = s / n;
    (mean, ((s2 / n - mean * mean) / n).sqrt())
}

#[test]
fn monte_carlo_moments() {
    let m = 7.0;
    let xs = draws(m, 1_000_000, 11);
    let stats = JacobiTheta::new(m).unwrap().stats();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let c = |k: i32| xs.iter().map(|x| (x - mean).powi(k)).sum::<f64>() / n;
    let var = c(2);
    let skew = c(3) / var.powf(1.5);
    let kurt = c(4) / (var * var);
    assert!(rel(mean, stats.mean) < 0.01);
    assert!(rel(var, stats.variance) < 0.03);
    assert!(rel(skew, stats.skewness) < 0.10);
    assert!(rel(kurt, stats.kurtosis) < 0.25);
}

#[test]
fn monte_carlo_transforms() {
    let xs = draws(1.0, 1_000_000, 12);
    let p = JacobiTheta::standard();

    let (lt, se) = mean_and_se(xs.iter().map(|x| (-x).exp()));
    assert!((lt - p.laplace_transform(1.0).unwrap()).abs() < 3.0 * se);

    // E e^{tX} has finite variance only for t < 1/(2m).
    let (mg, se) = mean_and_se(xs.iter().map(|x| (0.25 * x).exp()));
    assert!((mg - p.mgf(0.25).unwrap()).abs() < 3.0 * se);

    let q = JacobiTheta::new(7.0).unwrap();
    let ys = draws(7.0, 1_000_000, 13);
    let (re, se_re) = mean_and_se(ys.iter().map(|x| x.cos()));
    let (im, se_im) = mean_and_se(ys.iter().map(|x| x.sin()));
    let c = q.characteristic(1.0);
    assert!((re - c.re).abs() < 4.0 * se_re);
    assert!((im - c.im).abs() < 4.0 * se_im);
    let est = Complex64::new(re, im).norm_sqr();
    let tol = 4.0 * 2.0 * c.norm() * se_re.hypot(se_im) + 1e-6;
    assert!((est - q.spectrum_magnitude_sq(1.0)).abs() < tol);
}
