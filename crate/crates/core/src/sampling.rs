//! Random variates for the Jacobi theta law.
//!
//! Two exact-in-law samplers are provided. The series sampler draws the first
//! `K` weights of `Σ_{x≥1} W_x/x²` and optionally adds the deterministic mean
//! of the remaining tail. The inverse sampler pushes an open-interval uniform
//! through the quantile function.
//!
//! All generators are [`ThetaRng`] (xoshiro256++). Parallel drivers derive one
//! stream per chunk with [`stream_rng`], so their output does not depend on
//! the number of worker threads.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::{standard_quantile, JacobiTheta};
use crate::error::{domain, Error, Result};
use crate::specfun::{harmonic, ZETA2};

/// The generator behind every seeded sampler in this crate.
pub type ThetaRng = Xoshiro256PlusPlus;

/// Values per independently seeded chunk in [`sample_many`].
pub const CHUNK: usize = 4096;

pub fn seeded_rng(seed: u64) -> ThetaRng {
    ThetaRng::seed_from_u64(seed)
}

/// Generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ThetaRng {
    ThetaRng::seed_from_u64(splitmix64(
        seed ^ splitmix64(stream.wrapping_add(0x632B_E59B_D9B4_E019)),
    ))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw from the open interval `(0, 1)`.
pub fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}

/// Exponential variate with the given mean, `-mean·log U`.
pub fn sample_exponential<R: Rng + ?Sized>(rng: &mut R, mean: f64) -> f64 {
    -mean * open_unit(rng).ln()
}

/// Treatment of the weights beyond the truncation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailPolicy {
    Drop,
    MeanCompensate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSamplerConfig {
    truncation_k: u64,
    tail_policy: TailPolicy,
}

impl SeriesSamplerConfig {
    pub fn new(truncation_k: u64, tail_policy: TailPolicy) -> Result<Self> {
        if truncation_k == 0 {
            return Err(domain("truncation_k", 0.0, "[1, inf)"));
        }
        Ok(SeriesSamplerConfig {
            truncation_k,
            tail_policy,
        })
    }

    pub fn truncation_k(&self) -> u64 {
        self.truncation_k
    }

    pub fn tail_policy(&self) -> TailPolicy {
        self.tail_policy
    }
}

impl Default for SeriesSamplerConfig {
    /// `K = 10⁴` with the tail mean added back.
    fn default() -> Self {
        SeriesSamplerConfig {
            truncation_k: 10_000,
            tail_policy: TailPolicy::MeanCompensate,
        }
    }
}

/// `m·(ζ(2) - H_K^{(2)})`, the expected value of the weights beyond `K`.
pub fn series_tail_mean(m: f64, k: u64) -> f64 {
    let partial = harmonic(k, 2).expect("k ≥ 1 and order 2 are valid");
    m * (ZETA2 - partial).max(0.0)
}

/// Series sampler with its tail constant precomputed.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSampler {
    m: f64,
    k: u64,
    offset: f64,
}

impl SeriesSampler {
    pub fn new(p: &JacobiTheta, cfg: SeriesSamplerConfig) -> Self {
        let offset = match cfg.tail_policy {
            TailPolicy::Drop => 0.0,
            TailPolicy::MeanCompensate => series_tail_mean(p.m(), cfg.truncation_k),
        };
        SeriesSampler {
            m: p.m(),
            k: cfg.truncation_k,
            offset,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let mut acc = 0.0;
        for x in 1..=self.k {
            let xf = x as f64;
            acc -= open_unit(rng).ln() / (xf * xf);
        }
        self.m * acc + self.offset
    }
}

/// `Σ_{x=1}^{K} W_x/x²` with `W_x` exponential of mean `m`, plus the tail mean
/// when the policy asks for it.
pub fn sample_theta_series<R: Rng + ?Sized>(rng: &mut R, p: &JacobiTheta, cfg: SeriesSamplerConfig) -> f64 {
    SeriesSampler::new(p, cfg).sample(rng)
}

/// `quantile(U)` with `U` uniform on `(0, 1)`.
pub fn sample_theta_inverse<R: Rng + ?Sized>(rng: &mut R, p: &JacobiTheta) -> Result<f64> {
    Ok(p.m() * standard_quantile(open_unit(rng))?.x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum SamplerMethod {
    Series(SeriesSamplerConfig),
    Inverse,
}

impl Default for SamplerMethod {
    fn default() -> Self {
        SamplerMethod::Series(SeriesSamplerConfig::default())
    }
}

/// `n` variates, generated in parallel chunks of [`CHUNK`] with chunk `j`
/// drawn from `stream_rng(seed, j)`.
pub fn sample_many(p: &JacobiTheta, n: usize, method: SamplerMethod, seed: u64) -> Result<Vec<f64>> {
    let chunks: Vec<(usize, usize)> = (0..n)
        .step_by(CHUNK)
        .enumerate()
        .map(|(j, start)| (j, CHUNK.min(n - start)))
        .collect();
    let parts: Result<Vec<Vec<f64>>> = chunks
        .into_par_iter()
        .map(|(j, len)| {
            let mut rng = stream_rng(seed, j as u64);
            match method {
                SamplerMethod::Series(cfg) => {
                    let sampler = SeriesSampler::new(p, cfg);
                    Ok((0..len).map(|_| sampler.sample(&mut rng)).collect())
                }
                SamplerMethod::Inverse => (0..len).map(|_| sample_theta_inverse(&mut rng, p)).collect(),
            }
        })
        .collect();
    Ok(parts?.into_iter().flatten().collect())
}

/// A nonempty sample of positive finite reals, held in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSample("empty sample".into()));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidSample(format!(
                "value {v} at index {i} is not a positive finite real"
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(SampleSet { values })
    }

    /// Sorted values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        SampleSet::new(self.values.iter().map(|v| v * c).collect())
    }

    /// `#{X_i ≤ x}/n`.
    pub fn empirical_cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|v| *v <= x) as f64 / self.values.len() as f64
    }

    /// Order statistic `X_(⌈un⌉)`.
    pub fn empirical_quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(domain("u", u, "(0, 1)"));
        }
        let n = self.values.len();
        // Shave rounding from the product so that e.g. 0.3·10 gives rank 3.
        let un = u * n as f64;
        let rank = ((un - 4.0 * f64::EPSILON * un).ceil() as usize).clamp(1, n);
        Ok(self.values[rank - 1])
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Unbiased sample variance; 0 for a single value.
    pub fn variance(&self) -> f64 {
        let n = self.values.len();
        if n < 2 {
            return 0.0;
        }
        let mean = self.mean();
        self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_unit_stays_inside() {
        let mut rng = seeded_rng(3);
        for _ in 0..100_000 {
            let u = open_unit(&mut rng);
            assert!(u > 0.0 && u < 1.0);
        }
    }

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<f64> = (0..5).map(|_| open_unit(&mut stream_rng(9, 2))).collect();
        let b: Vec<f64> = (0..5).map(|_| open_unit(&mut stream_rng(9, 2))).collect();
        assert_eq!(a, b);
        assert_ne!(open_unit(&mut stream_rng(9, 2)), open_unit(&mut stream_rng(9, 3)));
        assert_ne!(open_unit(&mut stream_rng(9, 2)), open_unit(&mut stream_rng(10, 2)));
    }

    #[test]
    fn config_validation() {
        assert!(SeriesSamplerConfig::new(0, TailPolicy::Drop).is_err());
        let cfg = SeriesSamplerConfig::default();
        assert_eq!(cfg.truncation_k(), 10_000);
        assert_eq!(cfg.tail_policy(), TailPolicy::MeanCompensate);
    }

    #[test]
    fn tail_mean_matches_harmonic_gap() {
        let t = series_tail_mean(1.0, 10_000);
        assert!((t - 9.9995e-5).abs() < 1e-9);
        assert!(series_tail_mean(7.0, 1) > 7.0 * 0.6449);
    }

    #[test]
    fn sample_many_is_chunk_deterministic() {
        let p = JacobiTheta::new(2.0).unwrap();
        let cfg = SamplerMethod::Series(SeriesSamplerConfig::new(50, TailPolicy::Drop).unwrap());
        let a = sample_many(&p, CHUNK + 17, cfg, 5).unwrap();
        let b = sample_many(&p, CHUNK + 17, cfg, 5).unwrap();
        assert_eq!(a.len(), CHUNK + 17);
        assert_eq!(a, b);
        let head = sample_many(&p, CHUNK, cfg, 5).unwrap();
        assert_eq!(&a[..CHUNK], &head[..]);
    }

    #[test]
    fn sample_set_rejects_bad_values() {
        assert!(SampleSet::new(vec![]).is_err());
        assert!(SampleSet::new(vec![1.0, 0.0]).is_err());
        assert!(SampleSet::new(vec![1.0, -2.0]).is_err());
        assert!(SampleSet::new(vec![f64::NAN]).is_err());
        assert!(SampleSet::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn empirical_functions() {
        let s = SampleSet::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(s.empirical_cdf(0.5), 0.0);
        assert_eq!(s.empirical_cdf(2.0), 2.0 / 3.0);
        assert_eq!(s.empirical_cdf(3.0), 1.0);
        let s4 = SampleSet::new(vec![4.0, 2.0, 3.0, 1.0]).unwrap();
        assert_eq!(s4.empirical_quantile(0.5).unwrap(), 2.0);
        assert_eq!(s4.empirical_quantile(0.51).unwrap(), 3.0);
        assert_eq!(s4.empirical_quantile(1e-9).unwrap(), 1.0);
        let s10 = SampleSet::new((1..=10).map(f64::from).collect()).unwrap();
        assert_eq!(s10.empirical_quantile(0.3).unwrap(), 3.0);
        assert_eq!(s10.empirical_quantile(0.7).unwrap(), 7.0);
        assert!(s4.empirical_quantile(1.0).is_err());
        let one = SampleSet::new(vec![5.5]).unwrap();
        for &u in &[0.01, 0.5, 0.99] {
            assert_eq!(one.empirical_quantile(u).unwrap(), 5.5);
        }
        assert_eq!(one.variance(), 0.0);
    }
}
