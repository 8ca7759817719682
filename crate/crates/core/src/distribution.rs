//! The Jacobi theta distribution.
//!
//! `X = Σ_{x≥1} W_x / x²` with `W_x` i.i.d. exponential of mean `m`. The law
//! has Laplace transform `√(αm)π csch(√(αm)π)` and distribution function
//!
//! ```text
//! F(x) = √(mπ/x) · θ₂(0, e^{-mπ²/x})
//! ```
//!
//! It is a scale family, `X_m = m·X_1`, so every evaluation is carried out on
//! the reduced variable `s = x/m`.
//!
//! Two series are used for `F`. For `s ≤ π` the theta series above, whose
//! nome `e^{-π²/s}` is then at most `e^{-π}`. For `s > π` the modular dual
//! `θ₂(0, e^{-π²/s}) = √(s/π)·θ₄(0, e^{-s})`, which gives
//! `1 - F(s) = 2 Σ_{n≥1} (-1)^{n+1} e^{-n²s}` with full relative accuracy in
//! the upper tail. Both need at most a handful of terms, and they agree to
//! rounding at the switch.
//!
//! The density is the analytic `x`-derivative of `F`:
//!
//! ```text
//! f(x) = √(mπ)/(2x^{5/2}) · [ 2mπ² (θ₂/4 + 2q Σ_{k≥1} k(k+1) q^{k(k+1)-3/4}) - x θ₂ ]
//! ```
//!
//! with `q = e^{-mπ²/x}` and `θ₂ = θ₂(0, q)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::approx::LogNormal;
use crate::error::{domain, Error, Result};
use crate::numerics::{brent, Root};
use crate::specfun::{csch_complex, theta2_unchecked, theta2_with_scaled_deriv, SeriesTolerance, ZETA2, ZETA4};

const PI_SQ: f64 = PI * PI;

/// Reduced argument at which evaluation switches from the theta series to its
/// modular dual.
const DUAL_SWITCH: f64 = PI;

/// Below this reduced argument the CDF and density are reported as 0; the
/// true CDF there is below 1e-210.
const LOWER_CUTOFF: f64 = 0.005;

/// Largest tolerated excursion of a computed probability outside `[0, 1]`.
const CLAMP_SLACK: f64 = 1e-12;

/// Jacobi theta distribution with parameter `m > 0`, the common mean of the
/// exponential weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiTheta {
    m: f64,
}

/// Closed-form moments and shape constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionStats {
    pub mean: f64,
    pub variance: f64,
    pub second_moment: f64,
    pub skewness: f64,
    /// Raw (non-excess) kurtosis.
    pub kurtosis: f64,
    /// Mean over standard deviation.
    pub snr: f64,
}

impl JacobiTheta {
    pub fn new(m: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(domain("m", m, "(0, inf)"));
        }
        Ok(JacobiTheta { m })
    }

    /// The distribution with `m = 1`.
    pub fn standard() -> Self {
        JacobiTheta { m: 1.0 }
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    /// `P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        standard_cdf(x / self.m)
    }

    /// `P(X > x)`, accurate in the upper tail.
    pub fn sf(&self, x: f64) -> f64 {
        standard_sf(x / self.m)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        standard_pdf(x / self.m) / self.m
    }

    /// Inverse CDF for `0 < u < 1`; `|cdf(x) - u| < 1e-10` on return.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        Ok(self.m * standard_quantile(u)?.x)
    }

    /// `E e^{-αX}` for `α ≥ 0`.
    pub fn laplace_transform(&self, alpha: f64) -> Result<f64> {
        if !(alpha >= 0.0) {
            return Err(domain("alpha", alpha, "[0, inf)"));
        }
        Ok(x_over_sinh(PI * (alpha * self.m).sqrt()))
    }

    /// Moment generating function `E e^{tX}` for `t < 1/m`.
    ///
    /// The leading term `W₁` is exponential with mean `m`, so the mgf diverges
    /// as `t ↑ 1/m`; on `(0, 1/m)` it is the continuation `y/sin y`,
    /// `y = π√(tm)`.
    pub fn mgf(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t * self.m >= 1.0 {
            return Err(domain("t", t, "(-inf, 1/m)"));
        }
        if t <= 0.0 {
            return self.laplace_transform(-t);
        }
        let y = PI * (t * self.m).sqrt();
        if y < 1e-4 {
            let y2 = y * y;
            return Ok(1.0 + y2 / 6.0 + 7.0 * y2 * y2 / 360.0);
        }
        Ok(y / y.sin())
    }

    /// Characteristic function `C(ω) = E e^{iωX} = F(-iω)`.
    pub fn characteristic(&self, omega: f64) -> Complex64 {
        if omega == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        let z = Complex64::new(0.0, -omega * self.m).sqrt() * PI;
        // Re z > 0 whenever ω ≠ 0, so z is never a pole.
        z * csch_complex(z).expect("csch pole off the imaginary axis")
    }

    /// `|C(ω)|² = |ω| m π² csch(√(-iωm)π) csch(√(iωm)π)`.
    pub fn spectrum_magnitude_sq(&self, omega: f64) -> f64 {
        if omega == 0.0 {
            return 1.0;
        }
        let a = Complex64::new(0.0, -omega * self.m).sqrt() * PI;
        let b = Complex64::new(0.0, omega * self.m).sqrt() * PI;
        let prod = csch_complex(a).expect("csch pole off the imaginary axis")
            * csch_complex(b).expect("csch pole off the imaginary axis");
        // The factors are complex conjugates; the product is real.
        omega.abs() * self.m * PI_SQ * prod.re
    }

    /// Phase spectrum, the principal argument of `C(ω)` in `(-π, π]`.
    pub fn spectrum_phase(&self, omega: f64) -> f64 {
        self.characteristic(omega).arg()
    }

    pub fn stats(&self) -> DistributionStats {
        let m = self.m;
        DistributionStats {
            mean: m * ZETA2,
            variance: m * m * ZETA4,
            second_moment: 7.0 * m * m * PI_SQ * PI_SQ / 180.0,
            skewness: 4.0 * 10f64.sqrt() / 7.0,
            kurtosis: 57.0 / 7.0,
            snr: 2.5f64.sqrt(),
        }
    }

    pub fn mean(&self) -> f64 {
        self.m * ZETA2
    }

    pub fn variance(&self) -> f64 {
        self.m * self.m * ZETA4
    }

    /// `n!·(mζ(2))ⁿ`, an upper bound on `E Xⁿ` (tight only for `n = 1`).
    pub fn moment_upper_bound(&self, n: u32) -> Result<f64> {
        if n == 0 {
            return Err(domain("n", 0.0, "[1, inf)"));
        }
        let base = self.m * ZETA2;
        let mut acc = 1.0;
        for k in 1..=n {
            acc *= k as f64 * base;
            if !acc.is_finite() {
                return Err(Error::Overflow {
                    what: "moment upper bound",
                });
            }
        }
        Ok(acc)
    }
}

/// `y / sinh(y)` for `y ≥ 0`, continuous at 0 and free of overflow.
fn x_over_sinh(y: f64) -> f64 {
    if y < 1e-4 {
        let y2 = y * y;
        1.0 - y2 / 6.0 + 7.0 * y2 * y2 / 360.0
    } else if y > 20.0 {
        let e = (-y).exp();
        2.0 * y * e / (1.0 - e * e)
    } else {
        y / y.sinh()
    }
}

fn clamp_probability(v: f64) -> f64 {
    assert!(
        (-CLAMP_SLACK..=1.0 + CLAMP_SLACK).contains(&v),
        "internal consistency: probability {v} outside [0, 1]"
    );
    v.clamp(0.0, 1.0)
}

/// `2 Σ_{n≥1} (-1)^{n+1} e^{-n² s}`, or with each term weighted by `n²` (the
/// negated `s`-derivative), summed to rounding.
fn dual_tail(s: f64, weight_n_sq: bool) -> f64 {
    let mut sum = 0.0;
    let mut sign = 1.0;
    for n in 1..64 {
        let nn = (n * n) as f64;
        let term = if weight_n_sq { nn } else { 1.0 } * (-nn * s).exp();
        sum += sign * term;
        if term < 1e-17 * sum.abs() || term == 0.0 {
            break;
        }
        sign = -sign;
    }
    2.0 * sum
}

/// CDF of the standard (`m = 1`) distribution.
pub fn standard_cdf(s: f64) -> f64 {
    if !(s >= LOWER_CUTOFF) {
        return 0.0;
    }
    if s == f64::INFINITY {
        return 1.0;
    }
    let v = if s <= DUAL_SWITCH {
        let q = (-PI_SQ / s).exp();
        (PI / s).sqrt() * theta2_unchecked(q, SeriesTolerance::DEFAULT)
    } else {
        1.0 - dual_tail(s, false)
    };
    clamp_probability(v)
}

/// Survival function of the standard distribution.
pub fn standard_sf(s: f64) -> f64 {
    if s.is_nan() {
        return f64::NAN;
    }
    if s <= DUAL_SWITCH {
        return 1.0 - standard_cdf(s);
    }
    clamp_probability(dual_tail(s, false))
}

/// Density of the standard distribution.
pub fn standard_pdf(s: f64) -> f64 {
    if !(s >= LOWER_CUTOFF) || s == f64::INFINITY {
        return 0.0;
    }
    if s <= DUAL_SWITCH {
        let q = (-PI_SQ / s).exp();
        let (theta, scaled) = theta2_with_scaled_deriv(q, SeriesTolerance::DEFAULT);
        let bracket = 2.0 * PI_SQ * (theta / 4.0 + 2.0 * scaled) - s * theta;
        PI.sqrt() / (2.0 * s * s * s.sqrt()) * bracket
    } else {
        dual_tail(s, true)
    }
}

/// Median of the moment-matched log-normal for `m = 1`.
fn lognormal_median_standard() -> f64 {
    LogNormal::matching(&JacobiTheta::standard()).median()
}

/// Solve `F(s) = u` for the standard distribution.
///
/// Brent iteration in `log s`, bracketed by the log-normal median scaled by
/// `1e∓6` and widened by decades up to `[1e-300, 1e300]` if needed. For
/// `u > 1/2` the survival function is matched instead so that upper quantiles
/// keep their relative accuracy.
pub(crate) fn standard_quantile(u: f64) -> Result<Root> {
    if !(u > 0.0 && u < 1.0) {
        return Err(domain("u", u, "(0, 1)"));
    }
    let upper = u > 0.5;
    let target = if upper { 1.0 - u } else { u };
    // g is increasing in t = log s.
    let g = |t: f64| {
        let s = t.exp();
        if upper {
            target - standard_sf(s)
        } else {
            standard_cdf(s) - target
        }
    };

    let median = lognormal_median_standard().ln();
    let decade = 10f64.ln();
    let (mut lo, mut hi) = (median - 6.0 * decade, median + 6.0 * decade);
    let (lo_limit, hi_limit) = (-300.0 * decade, 300.0 * decade);
    while g(lo) > 0.0 {
        if lo <= lo_limit {
            return Err(bracket_failure(u));
        }
        lo = (lo - decade).max(lo_limit);
    }
    while g(hi) < 0.0 {
        if hi >= hi_limit {
            return Err(bracket_failure(u));
        }
        hi = (hi + decade).min(hi_limit);
    }

    let root = brent(g, lo, hi, 1e-15, 1e-16 * target, 200)?;
    let s = root.x.exp();
    let residual = (standard_cdf(s) - u).abs();
    if residual >= 1e-10 {
        return Err(Error::Convergence {
            routine: "quantile",
            detail: format!("u = {u}: residual {residual:e} at s = {s}"),
        });
    }
    Ok(Root {
        x: s,
        f_x: residual,
        iterations: root.iterations,
    })
}

fn bracket_failure(u: f64) -> Error {
    Error::Convergence {
        routine: "quantile",
        detail: format!("no bracket for u = {u} within [1e-300·m, 1e300·m]"),
    }
}
