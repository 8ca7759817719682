//! The eleven acceptance criteria.

use std::f64::consts::{E, PI};

use crate::oracles::{cdf_by_inversion, central_diff, log_space, simpson_log};
use jtheta::applications::*;
use jtheta::approx::{asymptotic_boundary_mass, asymptotic_cdf, asymptotic_upper_limit, LogNormal};
use jtheta::estimation::{estimate, mle_variance, run_estimator_study, EstimatorMethod, StudyConfig};
use jtheta::gof::{ks_one_sample, ks_statistic};
use jtheta::sampling::{sample_many, stream_rng, SampleSet, SamplerMethod, SeriesSamplerConfig};
use jtheta::specfun::lambert_w_m1;
use jtheta::JacobiTheta;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Detail line on success, reason on failure.
pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn theta(m: f64) -> JacobiTheta {
    JacobiTheta::new(m).unwrap()
}

fn mean_var(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

pub fn closed_form_statistics() -> Outcome {
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let mut worst: f64 = 0.0;
    for &m in &[1e-3, 0.5, 1.0, 6.0, 7.0, 1e3] {
        let s = theta(m).stats();
        for (got, want, what) in [
            (s.mean, m * pi2 / 6.0, "mean"),
            (s.variance, m * m * pi4 / 90.0, "variance"),
            (s.second_moment, 7.0 * m * m * pi4 / 180.0, "second moment"),
            (s.skewness, 4.0 * 10f64.sqrt() / 7.0, "skewness"),
            (s.kurtosis, 57.0 / 7.0, "kurtosis"),
            (s.snr, 2.5f64.sqrt(), "snr"),
        ] {
            let r = rel(got, want);
            ensure!(r <= 1e-14, "m = {m}: {what} {got} vs {want}");
            worst = worst.max(r);
        }
    }
    let s = theta(1.0).stats();
    ensure!((s.skewness - 1.8070).abs() < 1e-4, "skewness {}", s.skewness);
    ensure!((s.kurtosis - 8.1429).abs() < 1e-4, "kurtosis {}", s.kurtosis);
    ensure!((s.snr - 1.5811).abs() < 1e-4, "snr {}", s.snr);
    Ok(format!("worst relative error {worst:.1e}"))
}

pub fn cdf_against_inversion() -> Outcome {
    let mut worst: f64 = 0.0;
    for &m in &[1.0, 7.0] {
        let p = theta(m);
        let lo = p.quantile(1e-3).unwrap();
        let hi = p.quantile(0.999).unwrap();
        for x in log_space(lo, hi, 50) {
            let err = (p.cdf(x) - cdf_by_inversion(m, x)).abs();
            ensure!(err < 1e-6, "m = {m}, x = {x}: error {err:e}");
            worst = worst.max(err);
        }
    }
    Ok(format!("worst absolute error {worst:.1e}"))
}

pub fn pdf_is_derivative() -> Outcome {
    let mut worst: f64 = 0.0;
    for &m in &[0.5, 7.0] {
        let p = theta(m);
        let lo = p.quantile(1e-6).unwrap();
        let hi = p.quantile(1.0 - 1e-6).unwrap();
        for x in log_space(lo, hi, 200) {
            let fd = central_diff(|t| p.cdf(t), x, 1e-5 * x);
            let r = rel(p.pdf(x), fd);
            ensure!(r < 1e-6, "m = {m}, x = {x}: relative error {r:e}");
            worst = worst.max(r);
        }
    }
    Ok(format!("worst relative error {worst:.1e}"))
}

pub fn normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for &m in &[0.5, 1.0, 7.0, 100.0] {
        let p = theta(m);
        let hi = p.quantile(1.0 - 1e-10).unwrap();
        let total = simpson_log(|x| p.pdf(x), 0.005 * m, hi, 4000);
        ensure!((total - 1.0).abs() < 1e-6, "m = {m}: integral {total}");
        worst = worst.max((total - 1.0).abs());
    }
    Ok(format!("worst |integral - 1| {worst:.1e}"))
}

pub fn boundary_mass() -> Outcome {
    let target = 2.0 * (2.0 / (E * PI)).sqrt();
    let mut detail = Vec::new();
    for &m in &[1.0, 7.0] {
        let p = theta(m);
        let limit = m * PI * PI / 2.0;
        let asym = asymptotic_cdf(&p, limit).unwrap();
        ensure!(
            rel(asym, target) < 1e-14,
            "asymptotic cdf at the boundary {asym} vs {target}"
        );
        ensure!(
            asymptotic_upper_limit(&p) == limit,
            "boundary {}",
            asymptotic_upper_limit(&p)
        );
        detail.push(format!("m = {m}: asymptotic {asym:.16}"));
    }
    let exact = theta(7.0).cdf(7.0 * PI * PI / 2.0);
    ensure!(
        (0.9676..=0.9686).contains(&exact),
        "exact cdf at the boundary is {exact:.8}, outside [0.9676, 0.9686]; asymptotic part holds ({}); boundary mass {:.8}",
        detail.join(", "),
        asymptotic_boundary_mass()
    );
    Ok(format!("exact {exact:.8}; {}", detail.join(", ")))
}

pub fn lognormal_quality() -> Outcome {
    let p = theta(7.0);
    let ln = LogNormal::matching(&p);
    let lo = p.quantile(1e-3).unwrap();
    let hi = p.quantile(0.999).unwrap();
    let worst = log_space(lo, hi, 5000)
        .into_iter()
        .map(|x| (ln.cdf(x) - p.cdf(x)).abs())
        .fold(0.0, f64::max);
    ensure!(worst < 0.02, "max gap {worst}");
    Ok(format!("max gap {worst:.5}"))
}

pub fn sampler_fidelity() -> Outcome {
    let m = 7.0;
    let p = theta(m);
    let n = 100_000;
    let cfg = SeriesSamplerConfig::new(10_000, jtheta::TailPolicy::MeanCompensate).unwrap();
    let s = SampleSet::new(sample_many(&p, n, SamplerMethod::Series(cfg), 7).unwrap()).unwrap();
    let d = ks_statistic(s.values(), |x| p.cdf(x));
    let bound = 1.95 / (n as f64).sqrt();
    let (mean, var) = mean_var(s.values());
    let want_mean = m * PI * PI / 6.0;
    let want_var = m * m * PI.powi(4) / 90.0;
    let detail = format!(
        "D = {d:.5} (bound {bound:.5}), mean error {:.4}, variance error {:.4}",
        rel(mean, want_mean),
        rel(var, want_var)
    );
    ensure!(d < bound, "{detail}");
    ensure!(rel(mean, want_mean) < 0.01, "{detail}");
    ensure!(rel(var, want_var) < 0.03, "{detail}");
    Ok(detail)
}

pub fn estimator_study() -> Outcome {
    let cfg = StudyConfig::default();
    ensure!(
        cfg.true_m == 7.0 && cfg.n_per_sample == 100 && cfg.replicates == 10_000,
        "unexpected default study {cfg:?}"
    );
    let result = run_estimator_study(&cfg).map_err(|e| e.to_string())?;
    let mut detail = Vec::new();
    for method in EstimatorMethod::ALL {
        let s = result.summary(method);
        detail.push(format!(
            "{}: mean {:.4}, variance {:.4}",
            method.name(),
            s.mean,
            s.variance
        ));
        ensure!(s.failures == 0, "{} failed {} times", method.name(), s.failures);
    }
    let detail = detail.join("; ");
    for method in EstimatorMethod::ALL {
        ensure!(rel(result.summary(method).mean, 7.0) < 0.02, "(a) {detail}");
    }
    ensure!(
        result.smallest_variance() == Some(EstimatorMethod::LognormalMle),
        "(b) {detail}"
    );
    let predicted = mle_variance(&theta(7.0), 100);
    let mle = result.summary(EstimatorMethod::LognormalMle).variance;
    ensure!(rel(mle, predicted) < 0.10, "(c) predicted {predicted:.4}; {detail}");
    Ok(format!("{detail}; predicted MLE variance {predicted:.4}"))
}

pub fn lambert_branch() -> Outcome {
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let t = i as f64 / 999.0;
        let y = -(1e-12f64.ln() * (1.0 - t) + (1.0 / E).ln() * t).exp() * (1.0 - 1e-15 * t);
        let w = lambert_w_m1(y).map_err(|e| e.to_string())?;
        let r = (w * w.exp() - y).abs() / y.abs();
        ensure!(r < 1e-12 && w <= -1.0, "y = {y}: w = {w}, residual {r:e}");
        worst = worst.max(r);
    }
    let w = lambert_w_m1(-1.0 / E).unwrap();
    ensure!((w + 1.0).abs() < 1e-10, "W(-1/e) = {w}");
    Ok(format!("worst residual {worst:.1e}"))
}

pub fn applications() -> Outcome {
    // (a)
    for &(d, lambda) in &[(1.0, 1.0), (2.0, 0.01), (0.3, 5.0)] {
        let s = interference_param(d, lambda).unwrap().stats();
        ensure!(
            rel(s.mean, PI / (24.0 * lambda * d * d)) < 1e-14,
            "(a) mean at d = {d}, lambda = {lambda}"
        );
        let v = PI * PI / (1440.0 * lambda * lambda * d.powi(4));
        ensure!(rel(s.variance, v) < 1e-14, "(a) variance at d = {d}, lambda = {lambda}");
    }
    // (b)
    let lambda = 0.7;
    let mut rng = stream_rng(10, 0);
    let mut flows: Vec<f64> = (0..1_000_000).map(|_| sample_trade_flow(&mut rng, lambda)).collect();
    flows.sort_by(f64::total_cmp);
    let ks = ks_one_sample(&flows, |x| 1.0 - (-lambda * x).exp());
    ensure!(!ks.rejects_at(0.01), "(b) {ks:?}");
    // (c)
    for &(z, m, d, l) in &[(1.0, 7.0, 1.0, 0.01), (0.2, 3.0, 5.0, 2.0), (40.0, 0.1, 0.5, 1e-3)] {
        let s = sinr_moments(&SinrScenario::new(z, m, d, l).unwrap());
        let r = s.mean / s.variance.sqrt();
        ensure!(rel(r, 5f64.sqrt() / 3.0) < 1e-14, "(c) ratio {r}");
    }
    // (d)
    let n = 1_000_000u64;
    let mut worst_z: f64 = 0.0;
    for (i, &m) in [3.0, 5.0, 7.0, 9.0].iter().enumerate() {
        let sc = SinrScenario::new(1.0, m, 1.0, 0.01).unwrap();
        let at_zero = coverage_probability(&sc, 1e-12).map_err(|e| e.to_string())?;
        ensure!(at_zero > 1.0 - 1e-9, "(d) coverage near t = 0 is {at_zero}");
        let mut prev = 1.0;
        for t in log_space(1e-3, 1e3, 100) {
            let c = coverage_probability(&sc, t).map_err(|e| e.to_string())?;
            ensure!(c <= prev, "(d) not monotone at m = {m}, t = {t}");
            prev = c;
        }
        let draws: Vec<f64> = (0..n)
            .map(|j| sample_sinr(&mut stream_rng(20 + i as u64, j), &sc).unwrap())
            .collect();
        for t in [0.01, 0.1, 0.5, 1.0, 2.0, 10.0] {
            let p = coverage_probability(&sc, t).unwrap();
            let hits = draws.iter().filter(|&&q| q > t).count() as f64 / n as f64;
            let sigma = (p * (1.0 - p) / n as f64).sqrt().max(1.0 / n as f64);
            let z = (hits - p).abs() / sigma;
            ensure!(z < 3.0, "(d) m = {m}, t = {t}: simulated {hits} vs {p}");
            worst_z = worst_z.max(z);
        }
    }
    Ok(format!(
        "gravity KS p = {:.3}; worst coverage deviation {worst_z:.2} sigma",
        ks.p_value
    ))
}

pub fn scale_family() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    });
    let unit = JacobiTheta::standard();
    runner
        .run(&(1e-3f64..1e3, 0.01f64..50.0, 1e-6f64..0.999999), |(m, s, u)| {
            let p = theta(m);
            let x = s * m;
            prop_assert!(rel(p.cdf(x), unit.cdf(x / m)) <= 1e-12);
            let q = p.quantile(u).unwrap();
            prop_assert!(rel(q, m * unit.quantile(u).unwrap()) <= 1e-12);
            Ok(())
        })
        .map_err(|e| format!("distribution: {e}"))?;
    runner
        .run(
            &(
                proptest::collection::vec(0.01f64..100.0, 1..60),
                1e-3f64..1e3,
                0.05f64..0.95,
            ),
            |(values, c, u)| {
                let s = SampleSet::new(values).unwrap();
                let cs = s.scaled(c).unwrap();
                for method in EstimatorMethod::ALL {
                    let a = estimate(&s, method, u).unwrap().m_hat;
                    let b = estimate(&cs, method, u).unwrap().m_hat;
                    prop_assert!(rel(b, c * a) <= 1e-12, "{:?}", method);
                }
                Ok(())
            },
        )
        .map_err(|e| format!("estimators: {e}"))?;
    Ok("256 cases each for cdf/quantile and the three estimators".into())
}

/// The eleven criteria in order.
pub const ALL: [(u32, fn() -> Outcome); 11] = [
    (1, closed_form_statistics),
    (2, cdf_against_inversion),
    (3, pdf_is_derivative),
    (4, normalization),
    (5, boundary_mass),
    (6, lognormal_quality),
    (7, sampler_fidelity),
    (8, estimator_study),
    (9, lambert_branch),
    (10, applications),
    (11, scale_family),
];
