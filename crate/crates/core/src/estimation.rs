//! Estimators for `m` and the Monte Carlo study that compares them.
//!
//! * `exact_cdf_root`: solve `F_m(x_n) = u` at the empirical quantile `x_n`.
//!   By the scale identity `F_m(x) = F_1(x/m)` this is `m̂ = x_n/s_u` with
//!   `s_u` the standard `u`-quantile, computed once.
//! * `asymptotic_lambert`: invert the first-order asymptotic CDF,
//!   `m̂ = x_n·(-2W₋₁(-πu²/8))/π²`.
//! * `lognormal_mle`: `m̂ = (6/π²)√(7/5)·(Π X_i)^{1/n}`, the maximum likelihood
//!   estimate under the moment-matched log-normal.

use std::f64::consts::{E, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{asymptotic_boundary_mass, asymptotic_cdf};
use crate::distribution::{standard_quantile, JacobiTheta};
use crate::error::{domain, Result};
use crate::sampling::{sample_theta_inverse, stream_rng, SampleSet};
use crate::specfun::lambert_w_m1_iter;

const PI_SQ: f64 = PI * PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorMethod {
    ExactCdfRoot,
    AsymptoticLambert,
    LognormalMle,
}

impl EstimatorMethod {
    pub const ALL: [EstimatorMethod; 3] = [
        EstimatorMethod::ExactCdfRoot,
        EstimatorMethod::AsymptoticLambert,
        EstimatorMethod::LognormalMle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EstimatorMethod::ExactCdfRoot => "exact_cdf_root",
            EstimatorMethod::AsymptoticLambert => "asymptotic_lambert",
            EstimatorMethod::LognormalMle => "lognormal_mle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub method: EstimatorMethod,
    pub m_hat: f64,
    pub u_used: Option<f64>,
    pub iterations: usize,
    /// `|F(x_n) - u|` at the estimate, under the law the method inverts.
    pub residual: f64,
}

/// Exact-CDF estimator with the standard quantile for its `u` precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCdfEstimator {
    u: f64,
    s_u: f64,
    iterations: usize,
    residual: f64,
}

impl ExactCdfEstimator {
    pub fn new(u: f64) -> Result<Self> {
        let root = standard_quantile(u)?;
        Ok(ExactCdfEstimator {
            u,
            s_u: root.x,
            iterations: root.iterations,
            residual: root.f_x,
        })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// Estimate from a given `u`-quantile `x`.
    pub fn from_quantile(&self, x: f64) -> EstimateReport {
        EstimateReport {
            method: EstimatorMethod::ExactCdfRoot,
            m_hat: x / self.s_u,
            u_used: Some(self.u),
            iterations: self.iterations,
            residual: self.residual,
        }
    }

    pub fn estimate(&self, s: &SampleSet) -> EstimateReport {
        let x = s.empirical_quantile(self.u).expect("u validated at construction");
        self.from_quantile(x)
    }
}

/// Root of `F_m(x_n) = u` in `m`, with `x_n = F_n^{-1}(u)`.
pub fn estimate_exact_cdf(s: &SampleSet, u: f64) -> Result<EstimateReport> {
    Ok(ExactCdfEstimator::new(u)?.estimate(s))
}

/// Estimate from the asymptotic CDF for `0 < u ≤ 2√(2/(eπ))`.
pub fn estimate_asymptotic(s: &SampleSet, u: f64) -> Result<EstimateReport> {
    asymptotic_from_quantile(s.empirical_quantile(check_asymptotic_u(u)?)?, u)
}

fn check_asymptotic_u(u: f64) -> Result<f64> {
    if !(u > 0.0 && u <= asymptotic_boundary_mass()) {
        return Err(domain("u", u, "(0, 2√(2/(eπ))]"));
    }
    Ok(u)
}

/// `x·(-2W₋₁(-πu²/8))/π²` for a given `u`-quantile `x`.
pub fn asymptotic_from_quantile(x: f64, u: f64) -> Result<EstimateReport> {
    check_asymptotic_u(u)?;
    // At the upper end of the range rounding can push the argument a hair
    // below the branch point.
    let arg = (-PI * u * u / 8.0).max(-1.0 / E);
    let (w, iterations) = lambert_w_m1_iter(arg)?;
    let m_hat = x * (-2.0 * w) / PI_SQ;
    let p = JacobiTheta::new(m_hat)?;
    let residual = (asymptotic_cdf(&p, x.min(p.m() * PI_SQ / 2.0))? - u).abs();
    Ok(EstimateReport {
        method: EstimatorMethod::AsymptoticLambert,
        m_hat,
        u_used: Some(u),
        iterations,
        residual,
    })
}

/// `(6/π²)√(7/5)·exp(mean log X_i)`.
pub fn estimate_lognormal_mle(s: &SampleSet) -> EstimateReport {
    let mean_log = s.values().iter().map(|v| v.ln()).sum::<f64>() / s.len() as f64;
    EstimateReport {
        method: EstimatorMethod::LognormalMle,
        m_hat: 6.0 / PI_SQ * (7.0f64 / 5.0).sqrt() * mean_log.exp(),
        u_used: None,
        iterations: 0,
        residual: 0.0,
    }
}

pub fn estimate(s: &SampleSet, method: EstimatorMethod, u: f64) -> Result<EstimateReport> {
    match method {
        EstimatorMethod::ExactCdfRoot => estimate_exact_cdf(s, u),
        EstimatorMethod::AsymptoticLambert => estimate_asymptotic(s, u),
        EstimatorMethod::LognormalMle => Ok(estimate_lognormal_mle(s)),
    }
}

/// Location and scale of the sampling law
/// `m̂ ~ LogNormal(μ - σ²/(2n) + log((6/π²)√(7/5)), σ/√n)` for the matched
/// log-normal of `p`; the location simplifies to `log m - σ²/(2n)`.
///
/// This is the mean-unbiased form, `E m̂ = m`. For data that are exactly
/// log-normal, `log m̂` is `N(log m, σ²/n)`, centred `σ²/(2n)` higher.
pub fn mle_log_sampling_law(p: &JacobiTheta, n: usize) -> (f64, f64) {
    let sigma_sq = (7.0f64 / 5.0).ln();
    let nf = n as f64;
    (p.m().ln() - sigma_sq / (2.0 * nf), (sigma_sq / nf).sqrt())
}

/// `m²(e^{σ²/n} - 1)` with `σ² = log(7/5)`.
pub fn mle_variance(p: &JacobiTheta, n: usize) -> f64 {
    let sigma_sq = (7.0f64 / 5.0).ln();
    p.m() * p.m() * (sigma_sq / n as f64).exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub true_m: f64,
    pub n_per_sample: usize,
    pub replicates: usize,
    pub seed: u64,
    pub u: f64,
    pub bins: usize,
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        JacobiTheta::new(self.true_m)?;
        if self.n_per_sample == 0 {
            return Err(domain("n_per_sample", 0.0, "[1, inf)"));
        }
        if self.replicates == 0 {
            return Err(domain("replicates", 0.0, "[1, inf)"));
        }
        if !(self.u > 0.0 && self.u < 1.0) {
            return Err(domain("u", self.u, "(0, 1)"));
        }
        if self.bins == 0 {
            return Err(domain("bins", 0.0, "[1, inf)"));
        }
        Ok(())
    }
}

impl Default for StudyConfig {
    /// `m = 7`, `n = 100`, `10⁴` replicates, `u = 1/2`, 100 bins.
    fn default() -> Self {
        StudyConfig {
            true_m: 7.0,
            n_per_sample: 100,
            replicates: 10_000,
            seed: 1,
            u: 0.5,
            bins: 100,
        }
    }
}

/// Estimates from one replicate; `None` marks a failed estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplicateEstimates {
    pub replicate: usize,
    pub exact_cdf_root: Option<f64>,
    pub asymptotic_lambert: Option<f64>,
    pub lognormal_mle: Option<f64>,
}

impl ReplicateEstimates {
    pub fn get(&self, method: EstimatorMethod) -> Option<f64> {
        match method {
            EstimatorMethod::ExactCdfRoot => self.exact_cdf_root,
            EstimatorMethod::AsymptoticLambert => self.asymptotic_lambert,
            EstimatorMethod::LognormalMle => self.lognormal_mle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// `bins + 1` ascending edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    /// Equal-width bins over `[lo, hi]`; the last bin is closed.
    pub fn new(values: &[f64], lo: f64, hi: f64, bins: usize) -> Self {
        let width = (hi - lo) / bins as f64;
        let edges = (0..=bins).map(|i| lo + width * i as f64).collect();
        let mut counts = vec![0u64; bins];
        for &v in values {
            if !(v >= lo && v <= hi) {
                continue;
            }
            let idx = if width > 0.0 {
                (((v - lo) / width) as usize).min(bins - 1)
            } else {
                0
            };
            counts[idx] += 1;
        }
        Histogram { edges, counts }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: EstimatorMethod,
    pub successes: usize,
    pub failures: usize,
    pub mean: f64,
    /// Unbiased variance of the estimates.
    pub variance: f64,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub config: StudyConfig,
    pub estimates: Vec<ReplicateEstimates>,
    pub summaries: Vec<MethodSummary>,
}

impl StudyResult {
    pub fn summary(&self, method: EstimatorMethod) -> &MethodSummary {
        self.summaries
            .iter()
            .find(|s| s.method == method)
            .expect("every method is summarized")
    }

    /// Method with the strictly smallest variance, if there is one.
    pub fn smallest_variance(&self) -> Option<EstimatorMethod> {
        let mut sorted: Vec<&MethodSummary> = self.summaries.iter().filter(|s| s.successes > 1).collect();
        sorted.sort_by(|a, b| a.variance.total_cmp(&b.variance));
        match sorted.as_slice() {
            [only] => Some(only.method),
            [first, second, ..] if first.variance < second.variance => Some(first.method),
            _ => None,
        }
    }
}

/// Draw `replicates` samples of size `n` from the exact law (inverse
/// sampler, replicate `j` on `stream_rng(seed, j)`), apply the three
/// estimators to each and summarize.
pub fn run_estimator_study(cfg: &StudyConfig) -> Result<StudyResult> {
    cfg.validate()?;
    let p = JacobiTheta::new(cfg.true_m)?;
    let exact = ExactCdfEstimator::new(cfg.u)?;
    let u_asym = cfg.u.min(asymptotic_boundary_mass());

    let estimates: Vec<ReplicateEstimates> = (0..cfg.replicates)
        .into_par_iter()
        .map(|j| {
            let mut rng = stream_rng(cfg.seed, j as u64);
            let draws: Result<Vec<f64>> = (0..cfg.n_per_sample)
                .map(|_| sample_theta_inverse(&mut rng, &p))
                .collect();
            let Some(sample) = draws.ok().and_then(|d| SampleSet::new(d).ok()) else {
                return ReplicateEstimates {
                    replicate: j,
                    exact_cdf_root: None,
                    asymptotic_lambert: None,
                    lognormal_mle: None,
                };
            };
            ReplicateEstimates {
                replicate: j,
                exact_cdf_root: Some(exact.estimate(&sample).m_hat),
                asymptotic_lambert: estimate_asymptotic(&sample, u_asym).ok().map(|r| r.m_hat),
                lognormal_mle: Some(estimate_lognormal_mle(&sample).m_hat),
            }
        })
        .collect();

    let all: Vec<f64> = estimates
        .iter()
        .flat_map(|r| EstimatorMethod::ALL.map(|m| r.get(m)))
        .flatten()
        .collect();
    let lo = all.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = all.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let summaries = EstimatorMethod::ALL
        .iter()
        .map(|&method| {
            let values: Vec<f64> = estimates.iter().filter_map(|r| r.get(method)).collect();
            let n = values.len();
            let mean = values.iter().sum::<f64>() / n as f64;
            let variance = if n > 1 {
                values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
            } else {
                0.0
            };
            let histogram = if n > 0 {
                Histogram::new(&values, lo, hi, cfg.bins)
            } else {
                Histogram::new(&[], 0.0, 0.0, cfg.bins)
            };
            MethodSummary {
                method,
                successes: n,
                failures: estimates.len() - n,
                mean,
                variance,
                histogram,
            }
        })
        .collect();

    Ok(StudyResult {
        config: *cfg,
        estimates,
        summaries,
    })
}
