//! Kolmogorov–Smirnov statistics.

use serde::{Deserialize, Serialize};

/// Outcome of a Kolmogorov–Smirnov test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsTest {
    /// Supremum distance between the distribution functions.
    pub statistic: f64,
    /// Effective sample size, `n` or `n₁n₂/(n₁+n₂)`.
    pub effective_n: f64,
    /// Asymptotic p-value with Stephens' finite-sample correction.
    pub p_value: f64,
}

impl KsTest {
    fn from_statistic(statistic: f64, effective_n: f64) -> Self {
        let rn = effective_n.sqrt();
        let lambda = (rn + 0.12 + 0.11 / rn) * statistic;
        KsTest {
            statistic,
            effective_n,
            p_value: kolmogorov_sf(lambda),
        }
    }

    pub fn rejects_at(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// `Q(λ) = 2 Σ_{j≥1} (-1)^{j-1} e^{-2j²λ²}`, the limiting survival function of
/// `√n·D_n`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 0.3 {
        // Q is 1 to within 1e-15 here and the alternating series is slow.
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=100 {
        let jf = j as f64;
        let term = (-2.0 * jf * jf * lambda * lambda).exp();
        sum += sign * term;
        if term < 1e-17 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample statistic `sup |F_n - F|` for an ascending sample.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d.max(above).max(below)
    })
}

pub fn ks_one_sample<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> KsTest {
    KsTest::from_statistic(ks_statistic(sorted, cdf), sorted.len() as f64)
}

/// Two-sample statistic `sup |F_a - F_b|` for ascending samples.
pub fn ks_two_sample_statistic(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsTest {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    KsTest::from_statistic(ks_two_sample_statistic(a, b), na * nb / (na + nb))
}
