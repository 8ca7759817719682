//! Scalar special-function kernels.
//!
//! The theta series here is the `z = 0` specialization
//! `θ₂(0, q) = 2 q^{1/4} Σ_{k≥0} q^{k(k+1)}`. Its exponents grow
//! quadratically, so the series converges super-geometrically for any nome
//! bounded away from 1; the distribution module only ever feeds it nomes
//! `q ≤ e^{-π}`.

use std::f64::consts::{E, FRAC_2_SQRT_PI, PI};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// ζ(2) = π²/6.
pub const ZETA2: f64 = PI * PI / 6.0;
/// ζ(4) = π⁴/90.
pub const ZETA4: f64 = PI * PI * PI * PI / 90.0;

const INV_E: f64 = 1.0 / E;

/// Truncation policy for the theta series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTolerance {
    abs_tol: f64,
    max_terms: usize,
}

impl SeriesTolerance {
    pub const DEFAULT: SeriesTolerance = SeriesTolerance {
        abs_tol: 1e-15,
        max_terms: 64,
    };

    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol >= 0.0) {
            return Err(domain("abs_tol", abs_tol, "[0, inf)"));
        }
        if max_terms == 0 {
            return Err(domain("max_terms", 0.0, "[1, inf)"));
        }
        Ok(SeriesTolerance { abs_tol, max_terms })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// `θ₂(0, q)` for `0 ≤ q < 1`.
pub fn theta2_zero(q: f64) -> Result<f64> {
    theta2_zero_with(q, SeriesTolerance::DEFAULT)
}

pub fn theta2_zero_with(q: f64, tol: SeriesTolerance) -> Result<f64> {
    if !(0.0..1.0).contains(&q) {
        return Err(domain("q", q, "[0, 1)"));
    }
    Ok(theta2_unchecked(q, tol))
}

/// `Σ_{k≥1} k(k+1) q^{k(k+1) - 3/4}` for `0 < q < 1`, the inner series of
/// the `q`-derivative of `θ₂(0, q)`:
/// `dθ₂/dq = θ₂/(4q) + 2 Σ_{k≥1} k(k+1) q^{k(k+1)-3/4}`.
pub fn theta2_qderiv_series(q: f64) -> Result<f64> {
    theta2_qderiv_series_with(q, SeriesTolerance::DEFAULT)
}

pub fn theta2_qderiv_series_with(q: f64, tol: SeriesTolerance) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain("q", q, "(0, 1)"));
    }
    Ok(q.powf(-0.75) * weighted_power_sum(q, tol))
}

/// Returns `(θ₂(0,q), q · Σ_{k≥1} k(k+1) q^{k(k+1)-3/4})` in one pass.
///
/// The second component equals `q^{1/4} Σ_{k≥1} k(k+1) q^{k(k+1)}` and never
/// needs the `q^{-3/4}` factor, so it stays finite for nomes that underflow.
pub(crate) fn theta2_with_scaled_deriv(q: f64, tol: SeriesTolerance) -> (f64, f64) {
    let quarter = q.powf(0.25);
    let (plain, weighted) = power_sums(q, tol);
    (2.0 * quarter * plain, quarter * weighted)
}

pub(crate) fn theta2_unchecked(q: f64, tol: SeriesTolerance) -> f64 {
    if q == 0.0 {
        return 0.0;
    }
    2.0 * q.powf(0.25) * power_sums(q, tol).0
}

fn weighted_power_sum(q: f64, tol: SeriesTolerance) -> f64 {
    power_sums(q, tol).1
}

/// `(Σ_{k≥0} q^{k(k+1)}, Σ_{k≥1} k(k+1) q^{k(k+1)})`, stepping the power by
/// `q^{(k+1)(k+2)} = q^{k(k+1)} · q^{2(k+1)}`.
fn power_sums(q: f64, tol: SeriesTolerance) -> (f64, f64) {
    let q2 = q * q;
    let mut power = 1.0;
    let mut ratio = q2;
    let mut plain = 1.0;
    let mut weighted = 0.0;
    for k in 1..tol.max_terms {
        power *= ratio;
        ratio *= q2;
        let kk = (k * (k + 1)) as f64;
        plain += power;
        weighted += kk * power;
        if kk * power < tol.abs_tol {
            break;
        }
    }
    (plain, weighted)
}

/// Lower real branch `W₋₁(y)` of the Lambert W function, `-1/e ≤ y < 0`.
///
/// Returns `w ≤ -1` with `w e^w = y`.
pub fn lambert_w_m1(y: f64) -> Result<f64> {
    lambert_w_m1_iter(y).map(|(w, _)| w)
}

/// Same as [`lambert_w_m1`], also reporting the number of Halley steps taken.
pub fn lambert_w_m1_iter(y: f64) -> Result<(f64, usize)> {
    // Arguments within a few ulps below -1/e are rounding noise around the
    // branch point.
    if (-INV_E * (1.0 + 8.0 * f64::EPSILON)..-INV_E).contains(&y) {
        return Ok((-1.0, 0));
    }
    if !(-INV_E..0.0).contains(&y) {
        return Err(domain("y", y, "[-1/e, 0)"));
    }
    if y == -INV_E {
        return Ok((-1.0, 0));
    }

    let mut w = if y < -INV_E + 0.01 {
        // Puiseux expansion about the branch point.
        let p = -(2.0 * (1.0 + E * y)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else {
        let l1 = (-y).ln();
        let l2 = (-l1).ln();
        l1 - l2 + l2 / l1
    };
    if w > -1.0 {
        w = -1.0 - f64::EPSILON;
    }

    for iter in 1..=64 {
        let ew = w.exp();
        let f = w * ew - y;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            return Ok((w, iter));
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = (w - step).min(-1.0);
        if (next - w).abs() <= 4.0 * f64::EPSILON * w.abs() {
            return Ok((next, iter));
        }
        w = next;
    }
    let residual = (w * w.exp() - y).abs();
    if residual <= 1e-12 * y.abs() {
        Ok((w, 64))
    } else {
        Err(Error::Convergence {
            routine: "lambert_w_m1",
            detail: format!("y = {y}, residual {residual:e} after 64 Halley steps"),
        })
    }
}

/// Complex hyperbolic cosecant `1/sinh(z)`.
///
/// Poles at `z = ikπ` are reported as errors; nearby points are evaluated
/// as-is.
pub fn csch_complex(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 {
        let k = z.im / PI;
        if (k - k.round()).abs() <= 4.0 * f64::EPSILON * k.abs().max(1.0) {
            return Err(Error::Pole { re: z.re, im: z.im });
        }
    }
    if z.re.abs() > 20.0 {
        // csch z = 2e^{-z}/(1 - e^{-2z}); sinh would overflow for Re z > ~710.
        let (w, sign) = if z.re > 0.0 { (z, 1.0) } else { (-z, -1.0) };
        let e = (-w).exp();
        return Ok(sign * 2.0 * e / (1.0 - e * e));
    }
    Ok(z.sinh().inv())
}

/// Generalized harmonic number `H_t^{(order)} = Σ_{x=1}^{t} x^{-order}`.
///
/// Summed from the smallest term upward.
pub fn harmonic(t: u64, order: u32) -> Result<f64> {
    if t == 0 {
        return Err(domain("t", 0.0, "[1, inf)"));
    }
    if order == 0 {
        return Err(domain("order", 0.0, "[1, inf)"));
    }
    let order = order as i32;
    Ok((1..=t).rev().map(|x| (x as f64).powi(-order)).sum())
}

/// Error function, accurate to a few ulps absolute.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let a = x.abs();
    let v = if a < 2.0 { erf_series(a) } else { 1.0 - erfc_cf(a) };
    v.copysign(x)
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    // Below 2 the complement loses at most ~2e-14 relative (erfc(2) ≈ 4.7e-3).
    if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

/// `erf(x) = (2x/√π) e^{-x²} Σ_{n≥0} (2x²)^n / (1·3·…·(2n+1))`; all terms
/// positive, so no cancellation.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 1..200 {
        term *= 2.0 * x2 / (2 * n + 1) as f64;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    FRAC_2_SQRT_PI * x * (-x2).exp() * sum
}

/// Continued fraction `erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))`,
/// evaluated with the modified Lentz algorithm. Valid for `x ≳ 2`.
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for n in 1..500 {
        let a = n as f64 * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// Inverse error function on `(-1, 1)`, by Halley iteration on [`erf`].
pub fn erf_inv(y: f64) -> Result<f64> {
    if !(y > -1.0 && y < 1.0) {
        return Err(domain("y", y, "(-1, 1)"));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    // Winitzki's closed-form seed, good to ~2e-3.
    let a = 0.147;
    let ln = (1.0 - y * y).ln();
    let b = 2.0 / (PI * a) + 0.5 * ln;
    let mut x = ((b * b - ln / a).sqrt() - b).sqrt().copysign(y);
    for _ in 0..50 {
        let f = erf(x) - y;
        let fp = FRAC_2_SQRT_PI * (-x * x).exp();
        if fp == 0.0 {
            break;
        }
        let r = f / fp;
        // f''/f' = -2x, so the Halley correction is 1 + x r.
        let step = r / (1.0 + x * r);
        x -= step;
        if step.abs() <= 2.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    Ok(x)
}
