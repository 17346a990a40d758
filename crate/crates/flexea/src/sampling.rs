//! Discrete sampling from per-rate weight vectors via inverse CDF over a
//! prefix-sum table.

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Inverse-CDF sampler over 1-based rates. Rebuilt only when the underlying
/// distribution changes; rates with zero probability are never drawn.
#[derive(Debug, Clone, Default)]
pub struct CdfSampler {
    prefix: Vec<f64>,
    last_positive: usize,
}

impl CdfSampler {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds the prefix sums from `probabilities` (index 0 is rate 1).
    pub fn rebuild(&mut self, probabilities: &[f64]) {
        self.prefix.clear();
        self.prefix.reserve(probabilities.len());
        let mut acc = 0.0;
        self.last_positive = 0;
        for (i, &p) in probabilities.iter().enumerate() {
            debug_assert!(p >= 0.0);
            acc += p;
            self.prefix.push(acc);
            if p > 0.0 {
                self.last_positive = i + 1;
            }
        }
        debug_assert!(self.last_positive > 0, "all probabilities are zero");
    }

    /// Draws a rate in `[1..=n]` proportional to the stored weights.
    pub fn sample(&self, rng: &mut RandomSource) -> usize {
        let total = *self.prefix.last().expect("sampler not built");
        let x = rng.real() * total;
        let idx = self.prefix.partition_point(|&c| c <= x);
        if idx >= self.prefix.len() {
            self.last_positive
        } else {
            idx + 1
        }
    }
}

/// Power-law rate sampler: `Pr[r] ~ r^-beta` over `[1..=support_max]`.
#[derive(Debug, Clone)]
pub struct HeavyTailSampler {
    beta: f64,
    probabilities: Vec<f64>,
    cdf: CdfSampler,
}

impl HeavyTailSampler {
    /// Sampler over `[1..=max(1, n/2)]` with exponent `beta in (1, 2)`.
    pub fn for_half_range(n: usize, beta: f64) -> Result<Self> {
        Self::new((n / 2).max(1), beta)
    }

    pub fn new(support_max: usize, beta: f64) -> Result<Self> {
        if support_max == 0 {
            return Err(Error::InvalidParameter("empty power-law support".into()));
        }
        if !(beta > 1.0 && beta < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "power-law exponent {beta} outside (1, 2)"
            )));
        }
        let weights: Vec<f64> = (1..=support_max).map(|r| (r as f64).powf(-beta)).collect();
        let z: f64 = weights.iter().rev().sum();
        let probabilities: Vec<f64> = weights.iter().map(|w| w / z).collect();
        let mut cdf = CdfSampler::new();
        cdf.rebuild(&probabilities);
        Ok(Self {
            beta,
            probabilities,
            cdf,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn support_max(&self) -> usize {
        self.probabilities.len()
    }

    /// Exact selection probability of rate `r`.
    pub fn probability(&self, rate: usize) -> f64 {
        self.probabilities[rate - 1]
    }

    pub fn sample(&self, rng: &mut RandomSource) -> usize {
        self.cdf.sample(rng)
    }
}
