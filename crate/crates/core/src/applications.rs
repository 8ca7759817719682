//! Inverse-square superpositions of exponential weights.
//!
//! Interferers (or trading partners, or charges) sit on a radial grid. The
//! weight at grid index `x` is exponential and its contribution at the origin
//! falls off as the squared distance measured in grid spacings, so the total
//! is Jacobi theta distributed.

use std::f64::consts::{PI, SQRT_2};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::approx::LogNormal;
use crate::distribution::JacobiTheta;
use crate::error::{domain, Error, Result};
use crate::numerics::integrate;
use crate::sampling::{open_unit, sample_exponential, series_tail_mean, SeriesSamplerConfig, TailPolicy};
use crate::specfun::{erf_inv, erfc, harmonic, ZETA2};

const PI_SQ: f64 = PI * PI;

/// Lower quantile level at which the coverage quadrature is cut off (and the
/// same on the upper side).
const COVERAGE_TAIL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    /// Radii `d, 2d, 3d, …`.
    ConstantSpacing,
    /// Radii `√(t·x)·d` for `x = 1, …, t`.
    SqrtSpacing,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridScenario {
    pub d: f64,
    pub lambda: f64,
    pub kind: GridKind,
    /// Horizon `t` of the square-root grid; unused for constant spacing.
    pub extent_t: u64,
}

impl GridScenario {
    pub fn new(d: f64, lambda: f64, kind: GridKind, extent_t: u64) -> Result<Self> {
        positive("d", d)?;
        positive("lambda", lambda)?;
        if kind == GridKind::SqrtSpacing && extent_t == 0 {
            return Err(domain("extent_t", 0.0, "[1, inf)"));
        }
        Ok(GridScenario {
            d,
            lambda,
            kind,
            extent_t,
        })
    }

    /// The interference law on the constant grid, `m = 1/(4πd²λ)`.
    pub fn param(&self) -> Result<JacobiTheta> {
        interference_param(self.d, self.lambda)
    }

    /// Radius of grid point `k ≥ 1`.
    pub fn radius(&self, k: u64) -> f64 {
        match self.kind {
            GridKind::ConstantSpacing => k as f64 * self.d,
            GridKind::SqrtSpacing => ((self.extent_t as f64) * k as f64).sqrt() * self.d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinrScenario {
    pub z: f64,
    pub m: f64,
    pub d: f64,
    pub lambda: f64,
}

impl SinrScenario {
    pub fn new(z: f64, m: f64, d: f64, lambda: f64) -> Result<Self> {
        positive("z", z)?;
        positive("m", m)?;
        positive("d", d)?;
        positive("lambda", lambda)?;
        Ok(SinrScenario { z, m, d, lambda })
    }

    /// Mean `1/(4πd²λz)` of the transmitter power `P_z`.
    pub fn signal_mean(&self) -> f64 {
        1.0 / (4.0 * PI * self.d * self.d * self.lambda * self.z)
    }
}

fn positive(what: &'static str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(domain(what, v, "(0, inf)"));
    }
    Ok(())
}

/// `m = 1/(4πd²λ)` for interferer powers exponential with rate `4πd²λ`.
pub fn interference_param(d: f64, lambda: f64) -> Result<JacobiTheta> {
    positive("d", d)?;
    positive("lambda", lambda)?;
    JacobiTheta::new(1.0 / (4.0 * PI * d * d * lambda))
}

/// Mean `(H_t/t)/(4πλd²)` and variance `(H_t^{(2)}/t²)/(4πλd²)²` of the
/// interference from the square-root grid.
pub fn altered_grid_moments(sc: &GridScenario) -> Result<(f64, f64)> {
    if sc.kind != GridKind::SqrtSpacing {
        return Err(Error::Scenario("altered grid moments need the square-root grid"));
    }
    let t = sc.extent_t;
    let scale = 4.0 * PI * sc.lambda * sc.d * sc.d;
    let tf = t as f64;
    let mean = harmonic(t, 1)? / tf / scale;
    let variance = harmonic(t, 2)? / (tf * tf) / (scale * scale);
    Ok((mean, variance))
}

/// Grid points `1..=count` at their radii with uniform angles on `[0, 2π)`.
pub fn place_points<R: Rng + ?Sized>(rng: &mut R, count: u64, sc: &GridScenario) -> Result<Vec<(f64, f64)>> {
    if count == 0 {
        return Err(domain("count", 0.0, "[1, inf)"));
    }
    Ok((1..=count)
        .map(|k| {
            let r = sc.radius(k);
            let angle = 2.0 * PI * rng.random::<f64>();
            (r * angle.cos(), r * angle.sin())
        })
        .collect())
}

/// One realization of the interference at the origin from the constant grid:
/// `K` interferers with exponential powers of mean `m`, attenuated by the
/// squared distance in grid spacings, plus the tail mean if requested.
pub fn simulate_field<R: Rng + ?Sized>(rng: &mut R, sc: &GridScenario, cfg: SeriesSamplerConfig) -> Result<f64> {
    if sc.kind != GridKind::ConstantSpacing {
        return Err(Error::Scenario("field simulation needs the constant grid"));
    }
    let m = sc.param()?.m();
    let mut total = 0.0;
    for k in 1..=cfg.truncation_k() {
        let hops = sc.radius(k) / sc.d;
        total += sample_exponential(rng, m) / (hops * hops);
    }
    if cfg.tail_policy() == TailPolicy::MeanCompensate {
        total += series_tail_mean(m, cfg.truncation_k());
    }
    Ok(total)
}

/// One realization of the interference from the square-root grid.
pub fn simulate_altered_field<R: Rng + ?Sized>(rng: &mut R, sc: &GridScenario) -> Result<f64> {
    if sc.kind != GridKind::SqrtSpacing {
        return Err(Error::Scenario("altered field simulation needs the square-root grid"));
    }
    let m = interference_param(sc.d, sc.lambda)?.m();
    let mut total = 0.0;
    for k in 1..=sc.extent_t {
        let hops = sc.radius(k) / sc.d;
        total += sample_exponential(rng, m) / (hops * hops);
    }
    Ok(total)
}

/// Mean and variance of the ratio `Q_z = P_z/I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinrMoments {
    pub mean: f64,
    pub variance: f64,
    pub snr_ratio: f64,
}

/// Moments of `Q_z` under the log-normal surrogate for `I` in the reference
/// closed forms `21/(10π⁴d²λmz)` and `3969/(500π⁸d⁴λ²m²z²)`, with ratio
/// `mean/√variance = √5/3`. See [`sinr_moments_from_model`] for the values
/// the model itself yields.
pub fn sinr_moments(sc: &SinrScenario) -> SinrMoments {
    let SinrScenario { z, m, d, lambda } = *sc;
    let pi4 = PI_SQ * PI_SQ;
    SinrMoments {
        mean: 21.0 / (10.0 * pi4 * d * d * lambda * m * z),
        variance: 3969.0 / (500.0 * pi4 * pi4 * d.powi(4) * lambda * lambda * m * m * z * z),
        snr_ratio: 5f64.sqrt() / 3.0,
    }
}

/// The same moments evaluated directly from the model: `P_z` exponential of
/// mean `1/(4πd²λz)` independent of a log-normal `I` matched to `m`, so
/// `E Q = E P·E I⁻¹` and `E Q² = 2(E P)²·E I⁻²`. This gives
/// `21/(10π³d²λmz)` and `3969/(500π⁶d⁴λ²m²z²)`.
pub fn sinr_moments_from_model(sc: &SinrScenario) -> Result<SinrMoments> {
    let ln = LogNormal::matching(&JacobiTheta::new(sc.m)?);
    let s2 = ln.sigma * ln.sigma;
    let inv_mean = (-ln.mu + 0.5 * s2).exp();
    let inv_second = (-2.0 * ln.mu + 2.0 * s2).exp();
    let p = sc.signal_mean();
    let mean = p * inv_mean;
    let variance = 2.0 * p * p * inv_second - mean * mean;
    Ok(SinrMoments {
        mean,
        variance,
        snr_ratio: mean / variance.sqrt(),
    })
}

/// `P(P_z/I > t)` with `I` the log-normal surrogate matched to `sc.m`.
///
/// Conditioning on `I` gives `E exp(-t·I/E P_z)`, integrated over the standard
/// normal variable of `log I` between its `1e-9` and `1 - 1e-9` quantiles.
/// Each excluded tail is added with the integrand frozen at its cut.
pub fn coverage_probability(sc: &SinrScenario, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain("t", t, "(0, inf)"));
    }
    let ln = LogNormal::matching(&JacobiTheta::new(sc.m)?);
    let rate = t / sc.signal_mean();
    let w0 = SQRT_2 * erf_inv(1.0 - 2.0 * COVERAGE_TAIL)?;
    let integrand = |w: f64| {
        let phi = (-0.5 * w * w).exp() / (2.0 * PI).sqrt();
        phi * (-rate * (ln.mu + ln.sigma * w).exp()).exp()
    };
    let body = integrate(integrand, -w0, w0, 1e-13, 1e-11, 2000)?;
    let tail_mass = 0.5 * erfc(w0 / SQRT_2);
    let lower_tail = tail_mass * (-rate * (ln.mu - ln.sigma * w0).exp()).exp();
    let upper_tail = tail_mass * (-rate * (ln.mu + ln.sigma * w0).exp()).exp();
    Ok((body.value + lower_tail + upper_tail).clamp(0.0, 1.0))
}

/// `P(P_z/I > t)` under the exact law of `I`, which is the Laplace transform
/// of `I` at `t/E P_z`.
pub fn coverage_probability_exact(sc: &SinrScenario, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain("t", t, "(0, inf)"));
    }
    JacobiTheta::new(sc.m)?.laplace_transform(t / sc.signal_mean())
}

/// One draw of `P_z/I` with `I` from the log-normal surrogate.
pub fn sample_sinr<R: Rng + ?Sized>(rng: &mut R, sc: &SinrScenario) -> Result<f64> {
    let ln = LogNormal::matching(&JacobiTheta::new(sc.m)?);
    let p = sample_exponential(rng, sc.signal_mean());
    Ok(p / ln.quantile(open_unit(rng))?)
}

/// `m = 1/(λd²)` for trade flows `U·G` with `G ~ Gamma(2, rate λ)`.
pub fn gravity_trade_param(lambda: f64, d: f64) -> Result<JacobiTheta> {
    positive("lambda", lambda)?;
    positive("d", d)?;
    JacobiTheta::new(1.0 / (lambda * d * d))
}

/// `U·G` with `U` uniform on `(0, 1)` and `G ~ Gamma(2, rate λ)`, drawn as a
/// sum of two exponentials.
pub fn sample_trade_flow<R: Rng + ?Sized>(rng: &mut R, lambda: f64) -> f64 {
    let g = sample_exponential(rng, 1.0 / lambda) + sample_exponential(rng, 1.0 / lambda);
    open_unit(rng) * g
}

/// `Σ_{x≤K} U_x G_x/(dx)²`, plus the tail mean if requested.
pub fn simulate_trade_total<R: Rng + ?Sized>(
    rng: &mut R,
    lambda: f64,
    d: f64,
    cfg: SeriesSamplerConfig,
) -> Result<f64> {
    let m = gravity_trade_param(lambda, d)?.m();
    let mut total = 0.0;
    for x in 1..=cfg.truncation_k() {
        let dist = d * x as f64;
        total += sample_trade_flow(rng, lambda) / (dist * dist);
    }
    if cfg.tail_policy() == TailPolicy::MeanCompensate {
        total += series_tail_mean(m, cfg.truncation_k());
    }
    Ok(total)
}

/// `m = 1/(4πε₀d²λ)` for charges exponential with rate `4πε₀d²λ`.
pub fn electric_field_param(lambda: f64, d: f64, epsilon0: f64) -> Result<JacobiTheta> {
    positive("lambda", lambda)?;
    positive("d", d)?;
    positive("epsilon0", epsilon0)?;
    JacobiTheta::new(1.0 / (4.0 * PI * epsilon0 * d * d * lambda))
}

/// `ζ(2)/(4πλd²) = π/(24λd²)`, the mean interference on the constant grid.
pub fn interference_mean(d: f64, lambda: f64) -> f64 {
    ZETA2 / (4.0 * PI * lambda * d * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::seeded_rng;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn unit_normalizations() {
        assert!(rel(interference_param(1.0, 1.0 / (4.0 * PI)).unwrap().m(), 1.0) < 1e-15);
        assert_eq!(gravity_trade_param(1.0, 1.0).unwrap().m(), 1.0);
        let e = electric_field_param(3.0, 2.0, 1.0 / (4.0 * PI)).unwrap().m();
        assert!(rel(e, 1.0 / 12.0) < 1e-15);
        let si = electric_field_param(1.0, 1.0, 8.8541878128e-12).unwrap().m();
        assert!(rel(si, 8.9875517923e9) < 1e-9);
        assert!(interference_param(0.0, 1.0).is_err());
        assert!(GridScenario::new(1.0, 1.0, GridKind::SqrtSpacing, 0).is_err());
    }

    #[test]
    fn altered_grid_single_point() {
        let sc = GridScenario::new(1.0, 1.0, GridKind::SqrtSpacing, 1).unwrap();
        let (mean, var) = altered_grid_moments(&sc).unwrap();
        assert!(rel(mean, 1.0 / (4.0 * PI)) < 1e-15);
        assert!(rel(var, 1.0 / (16.0 * PI_SQ)) < 1e-15);
        let flat = GridScenario::new(1.0, 1.0, GridKind::ConstantSpacing, 0).unwrap();
        assert!(altered_grid_moments(&flat).is_err());
    }

    #[test]
    fn constant_grid_radii() {
        let sc = GridScenario::new(1.0, 1.0, GridKind::ConstantSpacing, 0).unwrap();
        let pts = place_points(&mut seeded_rng(1), 3, &sc).unwrap();
        for (k, (x, y)) in pts.iter().enumerate() {
            assert!((x.hypot(*y) - (k + 1) as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn sinr_ratio_and_scaling() {
        let sc = SinrScenario::new(1.0, 7.0, 1.0, 0.01).unwrap();
        let a = sinr_moments(&sc);
        assert!(rel(a.mean / a.variance.sqrt(), 5f64.sqrt() / 3.0) < 1e-14);
        let b = sinr_moments(&SinrScenario { z: 2.0, ..sc });
        assert!(rel(b.mean, a.mean / 2.0) < 1e-15);
        let model = sinr_moments_from_model(&sc).unwrap();
        assert!(rel(model.mean, a.mean * PI) < 1e-13);
        assert!(rel(model.variance, a.variance * PI_SQ) < 1e-12);
        assert!(rel(model.snr_ratio, a.snr_ratio) < 1e-12);
    }

    #[test]
    fn coverage_limits() {
        let sc = SinrScenario::new(1.0, 7.0, 1.0, 0.01).unwrap();
        assert!(coverage_probability(&sc, 1e-12).unwrap() > 1.0 - 1e-8);
        assert!(coverage_probability(&sc, 1e6).unwrap() < 1e-6);
        assert!(coverage_probability(&sc, 0.0).is_err());
        assert!(coverage_probability_exact(&sc, 1e-12).unwrap() > 1.0 - 1e-8);
    }
}
