//! Approximations to the Jacobi theta law.
//!
//! * First-order asymptotic: keeping only the `k = 0` term of the theta series
//!   gives `F(x) ≈ 2√(mπ/x)·e^{-mπ²/(4x)}`, certified for `x ≤ mπ²/2`. It is
//!   a sub-probability approximation: its mass at the boundary is
//!   `2√(2/(eπ)) ≈ 0.968` and it is not renormalized.
//! * Log-normal: `LogNormal(μ, σ)` matched on the first two moments, with
//!   `μ = log((1/6)√(5/7)π²m)` and `σ = √(log 7/5)`.

use std::f64::consts::{E, LN_2, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::distribution::JacobiTheta;
use crate::error::{domain, Result};
use crate::specfun::{erf, erf_inv, erfc};

const PI_SQ: f64 = PI * PI;

/// `2√(2/(eπ))`, the mass of the first-order approximation on `(0, mπ²/2]`.
pub fn asymptotic_boundary_mass() -> f64 {
    2.0 * (2.0 / (E * PI)).sqrt()
}

/// Upper end `mπ²/2` of the asymptotic approximation's domain.
pub fn asymptotic_upper_limit(p: &JacobiTheta) -> f64 {
    p.m() * PI_SQ / 2.0
}

fn check_asymptotic_domain(p: &JacobiTheta, x: f64) -> Result<()> {
    if !(x > 0.0 && x <= asymptotic_upper_limit(p)) {
        return Err(domain("x", x, "(0, m·π²/2]"));
    }
    Ok(())
}

/// First-order asymptotic CDF `2√(mπ/x)·e^{-mπ²/(4x)}` on `(0, mπ²/2]`.
pub fn asymptotic_cdf(p: &JacobiTheta, x: f64) -> Result<f64> {
    check_asymptotic_domain(p, x)?;
    let m = p.m();
    Ok(2.0 * (m * PI / x).sqrt() * (-m * PI_SQ / (4.0 * x)).exp())
}

/// First-order asymptotic density
/// `√π e^{-π²m/(4x)} (π²m - 2x) √(m/x) / (2x²)` on `(0, mπ²/2]`.
pub fn asymptotic_pdf(p: &JacobiTheta, x: f64) -> Result<f64> {
    check_asymptotic_domain(p, x)?;
    let m = p.m();
    let gap = (PI_SQ * m - 2.0 * x).max(0.0);
    Ok(PI.sqrt() * (-PI_SQ * m / (4.0 * x)).exp() * gap * (m / x).sqrt() / (2.0 * x * x))
}

/// Log-normal law with log-scale location `mu` and spread `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogNormal {
    pub mu: f64,
    pub sigma: f64,
}

/// `σ² = log(7/5)`, shared by every moment-matched log-normal.
pub fn matched_sigma_sq() -> f64 {
    (7.0f64 / 5.0).ln()
}

impl LogNormal {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(domain("mu", mu, "(-inf, inf)"));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(domain("sigma", sigma, "(0, inf)"));
        }
        Ok(LogNormal { mu, sigma })
    }

    /// The log-normal whose mean and variance equal those of `p`.
    pub fn matching(p: &JacobiTheta) -> Self {
        LogNormal {
            mu: ((5.0f64 / 7.0).sqrt() * PI_SQ * p.m() / 6.0).ln(),
            sigma: matched_sigma_sq().sqrt(),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        0.5 * (1.0 + erf((x.ln() - self.mu) / (self.sigma * SQRT_2)))
    }

    pub fn sf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 1.0;
        }
        0.5 * erfc((x.ln() - self.mu) / (self.sigma * SQRT_2))
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        let z = (x.ln() - self.mu) / self.sigma;
        (-0.5 * z * z).exp() / (x * self.sigma * (2.0 * PI).sqrt())
    }

    /// `exp(μ + σ√2·erf⁻¹(2u - 1))`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(domain("u", u, "(0, 1)"));
        }
        Ok((self.mu + self.sigma * SQRT_2 * erf_inv(2.0 * u - 1.0)?).exp())
    }

    pub fn median(&self) -> f64 {
        self.mu.exp()
    }

    pub fn mode(&self) -> f64 {
        (self.mu - self.sigma * self.sigma).exp()
    }

    pub fn mean(&self) -> f64 {
        (self.mu + 0.5 * self.sigma * self.sigma).exp()
    }

    pub fn variance(&self) -> f64 {
        let s2 = self.sigma * self.sigma;
        s2.exp_m1() * (2.0 * self.mu + s2).exp()
    }

    /// Differential entropy in bits, `log₂(σ√(2π)·e^{μ+1/2})`.
    pub fn entropy_bits(&self) -> f64 {
        (self.sigma.ln() + 0.5 * (2.0 * PI).ln() + self.mu + 0.5) / LN_2
    }
}

/// Skewness and (raw) kurtosis of the matched log-normal:
/// `(17√(2/5)/5, 7631/625)`.
///
/// Matching stops at the second moment, so these differ from the exact
/// distribution's `4√10/7 ≈ 1.81` and `57/7 ≈ 8.14`.
pub fn lognormal_shape_constants() -> (f64, f64) {
    (17.0 * (2.0f64 / 5.0).sqrt() / 5.0, 7631.0 / 625.0)
}

/// Entropy of the Jacobi theta law approximated by that of its matched
/// log-normal, in bits. Grows as `log₂ m`.
pub fn entropy_approx(p: &JacobiTheta) -> f64 {
    LogNormal::matching(p).entropy_bits()
}
