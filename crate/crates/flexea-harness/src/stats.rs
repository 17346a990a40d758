//! Summary statistics over run records.

use serde::{Deserialize, Serialize};

use flexea::rng::RandomSource;

use crate::error::{HarnessError, Result};

/// Number of bootstrap resamples behind the confidence interval.
pub const BOOTSTRAP_RESAMPLES: usize = 10_000;

/// RNG stream reserved for bootstrap resampling so it never collides with a
/// run index.
const BOOTSTRAP_STREAM: u64 = u64::MAX;

/// Statistics of the evaluation counts over the *successful* runs of an
/// experiment; the success rate over all runs is reported separately.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryStats {
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Mean evaluations over successful runs; `None` when nothing succeeded.
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub sd: Option<f64>,
    pub min: Option<u64>,
    pub max: Option<u64>,
    /// Bootstrap 95% confidence interval of the mean (percentile method,
    /// 10^4 resamples, seeded deterministically).
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
}

impl SummaryStats {
    /// Summarizes `(evaluations, success)` pairs. The bootstrap draws from a
    /// dedicated stream of `base_seed`, so reruns are bit-identical.
    pub fn from_outcomes(outcomes: &[(u64, bool)], base_seed: u64) -> Self {
        let successes: Vec<f64> = outcomes
            .iter()
            .filter(|(_, ok)| *ok)
            .map(|(e, _)| *e as f64)
            .collect();
        let runs = outcomes.len();
        let count = successes.len();
        if count == 0 {
            return Self {
                runs,
                successes: 0,
                success_rate: 0.0,
                mean: None,
                median: None,
                sd: None,
                min: None,
                max: None,
                ci_low: None,
                ci_high: None,
            };
        }
        let mean = successes.iter().sum::<f64>() / count as f64;
        let mut sorted = successes.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = if count % 2 == 1 {
            sorted[count / 2]
        } else {
            0.5 * (sorted[count / 2 - 1] + sorted[count / 2])
        };
        let sd = if count > 1 {
            (successes.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1) as f64)
                .sqrt()
        } else {
            0.0
        };
        let (ci_low, ci_high) = bootstrap_ci(&successes, base_seed);
        Self {
            runs,
            successes: count,
            success_rate: count as f64 / runs as f64,
            mean: Some(mean),
            median: Some(median),
            sd: Some(sd),
            min: Some(sorted[0] as u64),
            max: Some(sorted[count - 1] as u64),
            ci_low: Some(ci_low),
            ci_high: Some(ci_high),
        }
    }
}

fn bootstrap_ci(values: &[f64], base_seed: u64) -> (f64, f64) {
    let n = values.len();
    if n == 1 {
        return (values[0], values[0]);
    }
    let mut rng = RandomSource::split(base_seed, BOOTSTRAP_STREAM);
    let mut means = Vec::with_capacity(BOOTSTRAP_RESAMPLES);
    for _ in 0..BOOTSTRAP_RESAMPLES {
        let mut total = 0.0;
        for _ in 0..n {
            total += values[rng.int_in(0, n - 1)];
        }
        means.push(total / n as f64);
    }
    means.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let low_idx = (BOOTSTRAP_RESAMPLES as f64 * 0.025) as usize;
    let high_idx = ((BOOTSTRAP_RESAMPLES as f64 * 0.975) as usize).min(BOOTSTRAP_RESAMPLES - 1);
    (means[low_idx], means[high_idx])
}

/// Least-squares slope of `log(mean)` against `log(n)`.
pub fn fit_scaling_exponent(rows: &[(f64, f64)]) -> Result<f64> {
    let mut distinct: Vec<f64> = rows.iter().map(|r| r.0).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    distinct.dedup();
    if rows.len() < 3 || distinct.len() < 3 {
        return Err(HarnessError::Config(
            "scaling fit needs at least 3 rows with distinct sizes".into(),
        ));
    }
    for &(n, mean) in rows {
        if n <= 0.0 || mean <= 0.0 {
            return Err(HarnessError::Config(
                "scaling fit needs positive sizes and means".into(),
            ));
        }
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|&(n, m)| (n.ln(), m.ln())).collect();
    let x_mean = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let y_mean = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
    let numerator: f64 = points
        .iter()
        .map(|p| (p.0 - x_mean) * (p.1 - y_mean))
        .sum();
    let denominator: f64 = points.iter().map(|p| (p.0 - x_mean) * (p.0 - x_mean)).sum();
    Ok(numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summarizes_successes_only() {
        let outcomes = vec![(10, true), (20, true), (1000, false), (30, true)];
        let stats = SummaryStats::from_outcomes(&outcomes, 1);
        assert_eq!(stats.runs, 4);
        assert_eq!(stats.successes, 3);
        assert!((stats.success_rate - 0.75).abs() < 1e-12);
        assert_eq!(stats.mean, Some(20.0));
        assert_eq!(stats.median, Some(20.0));
        assert_eq!(stats.min, Some(10));
        assert_eq!(stats.max, Some(30));
        let (lo, hi) = (stats.ci_low.unwrap(), stats.ci_high.unwrap());
        assert!(lo <= 20.0 && 20.0 <= hi);
    }

    #[test]
    fn empty_success_set_yields_no_stats() {
        let stats = SummaryStats::from_outcomes(&[(5, false)], 0);
        assert_eq!(stats.success_rate, 0.0);
        assert!(stats.mean.is_none());
    }

    #[test]
    fn bootstrap_is_deterministic() {
        let outcomes: Vec<(u64, bool)> = (1..=50).map(|i| (i * 7 % 90 + 10, true)).collect();
        let a = SummaryStats::from_outcomes(&outcomes, 42);
        let b = SummaryStats::from_outcomes(&outcomes, 42);
        assert_eq!(a.ci_low, b.ci_low);
        assert_eq!(a.ci_high, b.ci_high);
    }

    #[test]
    fn exact_power_laws_fit_exactly() {
        let quadratic: Vec<(f64, f64)> = [8.0, 16.0, 32.0, 64.0].iter().map(|&n| (n, n * n)).collect();
        let slope = fit_scaling_exponent(&quadratic).unwrap();
        assert!((slope - 2.0).abs() < 1e-9);

        let linear: Vec<(f64, f64)> = [10.0, 20.0, 40.0].iter().map(|&n| (n, 3.7 * n)).collect();
        let slope = fit_scaling_exponent(&linear).unwrap();
        assert!((slope - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fit_rejects_degenerate_inputs() {
        assert!(fit_scaling_exponent(&[(8.0, 64.0), (16.0, 256.0)]).is_err());
        assert!(fit_scaling_exponent(&[(8.0, 1.0), (8.0, 2.0), (8.0, 3.0)]).is_err());
    }
}
