//! Rate-selection parameter schemes and the probability-mass distribution.
//!
//! A [`RateSchedule`] pairs the lower-bound vector `lambda` (per-rate floors
//! on selection probability) with the count-bound vector `t` (failure budgets
//! after which an active rate expires). The distribution step spreads the
//! probability mass not claimed by inactive floors as evenly as possible over
//! the active rates, pinning any active rate whose floor exceeds the even
//! share. Three routes compute that vector:
//!
//! * [`RateSchedule::distribute_mass`] — the production path. It walks the
//!   active rates in descending-floor order via [`ActiveRates`], an ordered
//!   index that is maintained incrementally across archive updates.
//! * [`RateSchedule::distribute_mass_resort`] — a literal reference that
//!   re-sorts the active set on every call.
//! * [`RateSchedule::water_filling_oracle`] — an independent check that finds
//!   the common level by bisection instead of sequential capping.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};

/// Slack allowed when validating user-supplied floors against `sum <= 1`.
pub const LAMBDA_SUM_SLACK: f64 = 1e-9;

/// Binomial coefficient as a float: exact (within one rounding) for `n <= 64`
/// via 128-bit integers, multiplicative beyond that, `inf` on overflow.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 64 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as f64
    } else {
        let mut acc = 1.0f64;
        for i in 0..k {
            acc = acc * (n - i) as f64 / (i + 1) as f64;
        }
        acc
    }
}

fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Heavy-tailed floors `lambda_i = i^-beta / (2 C_beta)` with
/// `C_beta = sum_{i in [n]} i^-beta`. The vector sums to exactly `1/2`, so
/// half of the probability mass always remains for the active rates.
pub fn heavy_tailed_lower_bounds(n: usize, beta: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(beta > 1.0 && beta < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "power-law exponent {beta} outside (1, 2)"
        )));
    }
    let weights: Vec<f64> = (1..=n).map(|i| (i as f64).powf(-beta)).collect();
    // Smallest terms first for an accurate normalizer.
    let normalizer = kahan_sum(weights.iter().rev().copied());
    Ok(weights.iter().map(|w| w / (2.0 * normalizer)).collect())
}

/// Stagnation-detection count bounds `t_i = C(n, i) * ln(R)`.
pub fn standard_sd_count_bounds(n: usize, r_param: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if !(r_param > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "count-bound parameter R = {r_param} must exceed 1"
        )));
    }
    let ln_r = r_param.ln();
    Ok((1..=n).map(|i| binomial(n, i) * ln_r).collect())
}

/// Immutable parameter pair (floors `lambda`, count bounds `t`) for problem
/// size `n`. Rates are 1-based throughout.
#[derive(Debug, Clone)]
pub struct RateSchedule {
    n: usize,
    lower_bounds: Vec<f64>,
    count_bounds: Vec<f64>,
    total_lambda: f64,
}

impl RateSchedule {
    pub fn new(lower_bounds: Vec<f64>, count_bounds: Vec<f64>) -> Result<Self> {
        let n = lower_bounds.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty lower-bound vector".into()));
        }
        if count_bounds.len() != n {
            return Err(Error::InvalidConfiguration(format!(
                "lower-bound vector has {n} entries but count-bound vector has {}",
                count_bounds.len()
            )));
        }
        for (i, &l) in lower_bounds.iter().enumerate() {
            if !(0.0..=1.0).contains(&l) || l.is_nan() {
                return Err(Error::InvalidParameter(format!(
                    "lower bound for rate {} is {l}, outside [0, 1]",
                    i + 1
                )));
            }
        }
        for (i, &t) in count_bounds.iter().enumerate() {
            if t < 0.0 || t.is_nan() {
                return Err(Error::InvalidParameter(format!(
                    "count bound for rate {} is {t}, negative",
                    i + 1
                )));
            }
        }
        let total_lambda = kahan_sum(lower_bounds.iter().copied());
        if total_lambda > 1.0 + LAMBDA_SUM_SLACK {
            return Err(Error::InvalidParameter(format!(
                "lower bounds sum to {total_lambda} > 1"
            )));
        }
        Ok(Self {
            n,
            lower_bounds,
            count_bounds,
            total_lambda,
        })
    }

    /// The recommended parameter-less configuration: heavy-tailed floors with
    /// exponent `beta` and standard-SD count bounds with parameter `r_param`.
    pub fn recommended(n: usize, beta: f64, r_param: f64) -> Result<Self> {
        Self::new(
            heavy_tailed_lower_bounds(n, beta)?,
            standard_sd_count_bounds(n, r_param)?,
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Floor of rate `r` (1-based).
    #[inline]
    pub fn lambda(&self, rate: usize) -> f64 {
        self.lower_bounds[rate - 1]
    }

    /// Count bound of rate `r` (1-based).
    #[inline]
    pub fn count_bound(&self, rate: usize) -> f64 {
        self.count_bounds[rate - 1]
    }

    pub fn lower_bounds(&self) -> &[f64] {
        &self.lower_bounds
    }

    pub fn count_bounds(&self) -> &[f64] {
        &self.count_bounds
    }

    pub fn total_lambda(&self) -> f64 {
        self.total_lambda
    }

    /// Distributes all probability mass not fixed by inactive floors as
    /// evenly as possible over `active`, respecting the floors of active
    /// rates. Uses the pre-ordered index of `active`.
    pub fn distribute_mass(&self, active: &ActiveRates) -> Result<FrequencyVector> {
        if active.is_empty() {
            return Err(Error::InvalidState("active rate set is empty".into()));
        }
        debug_assert_eq!(active.size(), self.n);
        let mut p = self.lower_bounds.clone();
        let active_lambda = kahan_sum(active.iter_desc_lambda().map(|r| self.lambda(r)));
        let mut mass = 1.0 - (self.total_lambda - active_lambda);
        let count = active.len();
        for (i, rate) in active.iter_desc_lambda().enumerate() {
            let share = mass / (count - i) as f64;
            if self.lambda(rate) <= share {
                for rest in active.iter_desc_lambda().skip(i) {
                    p[rest - 1] = share;
                }
                return Ok(FrequencyVector { values: p });
            }
            p[rate - 1] = self.lambda(rate);
            mass -= self.lambda(rate);
        }
        Ok(FrequencyVector { values: p })
    }

    /// Reference implementation that sorts the active set by descending
    /// floor (ties by ascending rate) on every call.
    pub fn distribute_mass_resort(&self, active: &[usize]) -> Result<FrequencyVector> {
        if active.is_empty() {
            return Err(Error::InvalidState("active rate set is empty".into()));
        }
        let mut order = active.to_vec();
        order.sort_unstable();
        order.dedup();
        let member: BTreeSet<usize> = order.iter().copied().collect();
        order.sort_by(|&a, &b| {
            self.lambda(b)
                .partial_cmp(&self.lambda(a))
                .unwrap()
                .then(a.cmp(&b))
        });
        let mut p = self.lower_bounds.clone();
        let mut mass = 1.0
            - kahan_sum(
                (1..=self.n)
                    .filter(|r| !member.contains(r))
                    .map(|r| self.lambda(r)),
            );
        let count = order.len();
        for i in 0..count {
            let share = mass / (count - i) as f64;
            if self.lambda(order[i]) <= share {
                for &rest in &order[i..] {
                    p[rest - 1] = share;
                }
                return Ok(FrequencyVector { values: p });
            }
            p[order[i] - 1] = self.lambda(order[i]);
            mass -= self.lambda(order[i]);
        }
        Ok(FrequencyVector { values: p })
    }

    /// Independent oracle: finds the common level `v` with
    /// `sum_{i in F} max(lambda_i, v) = M` by bisection, then pins rates with
    /// floors above the level and splits the rest exactly.
    pub fn water_filling_oracle(&self, active: &[usize]) -> Result<FrequencyVector> {
        if active.is_empty() {
            return Err(Error::InvalidState("active rate set is empty".into()));
        }
        let mut rates = active.to_vec();
        rates.sort_unstable();
        rates.dedup();
        let member: BTreeSet<usize> = rates.iter().copied().collect();
        let mass = 1.0
            - kahan_sum(
                (1..=self.n)
                    .filter(|r| !member.contains(r))
                    .map(|r| self.lambda(r)),
            );
        let filled = |v: f64| -> f64 { rates.iter().map(|&r| self.lambda(r).max(v)).sum() };
        let (mut lo, mut hi) = (0.0f64, mass.max(0.0));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if filled(mid) <= mass {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let level = 0.5 * (lo + hi);
        let mut p = self.lower_bounds.clone();
        let pinned: Vec<usize> = rates
            .iter()
            .copied()
            .filter(|&r| self.lambda(r) > level)
            .collect();
        let unpinned = rates.len() - pinned.len();
        if unpinned == 0 {
            // No slack beyond the floors; every active rate stays there.
            return Ok(FrequencyVector { values: p });
        }
        let pinned_mass: f64 = pinned.iter().map(|&r| self.lambda(r)).sum();
        let share = (mass - pinned_mass) / unpinned as f64;
        for &r in &rates {
            p[r - 1] = if self.lambda(r) > level {
                self.lambda(r)
            } else {
                share
            };
        }
        Ok(FrequencyVector { values: p })
    }

    /// Loads a vector from a plain-text file: one real per line, exactly `n`
    /// lines.
    pub fn load_vector(path: &Path, n: usize) -> Result<Vec<f64>> {
        let text = std::fs::read_to_string(path)?;
        let mut values = Vec::with_capacity(n);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let v: f64 = line.parse().map_err(|_| {
                Error::Parse(format!(
                    "{}:{}: expected a real number, got {line:?}",
                    path.display(),
                    lineno + 1
                ))
            })?;
            values.push(v);
        }
        if values.len() != n {
            return Err(Error::InvalidConfiguration(format!(
                "{}: expected {n} values, found {}",
                path.display(),
                values.len()
            )));
        }
        Ok(values)
    }
}

/// A frequency vector: the per-rate selection distribution for one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyVector {
    values: Vec<f64>,
}

impl FrequencyVector {
    /// Selection probability of rate `r` (1-based).
    #[inline]
    pub fn probability(&self, rate: usize) -> f64 {
        self.values[rate - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks the distribution invariants against the schedule and active
    /// set that produced this vector: total mass 1, floors respected,
    /// inactive rates exactly at their floor, and all unpinned active rates
    /// equal.
    pub fn validate(&self, schedule: &RateSchedule, active: &BTreeSet<usize>) -> Result<()> {
        let total = kahan_sum(self.values.iter().copied());
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidState(format!("mass sums to {total}")));
        }
        let mut unpinned_value: Option<f64> = None;
        for r in 1..=schedule.size() {
            let p = self.probability(r);
            let l = schedule.lambda(r);
            if active.contains(&r) {
                if p < l - 1e-12 {
                    return Err(Error::InvalidState(format!(
                        "active rate {r} below its floor: {p} < {l}"
                    )));
                }
                if p > l {
                    match unpinned_value {
                        None => unpinned_value = Some(p),
                        Some(v) if (v - p).abs() > 1e-10 => {
                            return Err(Error::InvalidState(format!(
                                "unpinned active rates unequal: {v} vs {p}"
                            )));
                        }
                        _ => {}
                    }
                }
            } else if p != l {
                return Err(Error::InvalidState(format!(
                    "inactive rate {r} not at its floor: {p} != {l}"
                )));
            }
        }
        Ok(())
    }
}

/// The set of active rates, kept ordered by descending floor (ties broken by
/// ascending rate) so the distribution step never re-sorts. Insertion and
/// removal are logarithmic.
#[derive(Debug, Clone)]
pub struct ActiveRates {
    n: usize,
    lambda_bits: Vec<u64>,
    by_lambda: BTreeSet<(Reverse<u64>, usize)>,
    rates: BTreeSet<usize>,
}

impl ActiveRates {
    pub fn new(schedule: &RateSchedule, initial: impl IntoIterator<Item = usize>) -> Result<Self> {
        // Floors are non-negative, so the IEEE bit pattern orders them.
        let lambda_bits = schedule.lower_bounds.iter().map(|l| l.to_bits()).collect();
        let mut set = Self {
            n: schedule.size(),
            lambda_bits,
            by_lambda: BTreeSet::new(),
            rates: BTreeSet::new(),
        };
        for r in initial {
            if r == 0 || r > set.n {
                return Err(Error::InvalidRate { rate: r, n: set.n });
            }
            set.insert(r);
        }
        Ok(set)
    }

    fn key(&self, rate: usize) -> (Reverse<u64>, usize) {
        (Reverse(self.lambda_bits[rate - 1]), rate)
    }

    /// Adds `rate`; returns whether the set changed.
    pub fn insert(&mut self, rate: usize) -> bool {
        debug_assert!(rate >= 1 && rate <= self.n);
        if self.rates.insert(rate) {
            self.by_lambda.insert(self.key(rate));
            true
        } else {
            false
        }
    }

    /// Removes `rate`; returns whether it was present.
    pub fn remove(&mut self, rate: usize) -> bool {
        if self.rates.remove(&rate) {
            self.by_lambda.remove(&self.key(rate));
            true
        } else {
            false
        }
    }

    pub fn contains(&self, rate: usize) -> bool {
        self.rates.contains(&rate)
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    /// Problem size this set indexes into.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Smallest active rate.
    pub fn min_rate(&self) -> Option<usize> {
        self.rates.first().copied()
    }

    /// Active rates in descending-floor order, ties by ascending rate.
    pub fn iter_desc_lambda(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_lambda.iter().map(|&(_, r)| r)
    }

    /// Active rates in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.rates.iter().copied()
    }

    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.rates.iter().copied().collect()
    }

    pub fn clear(&mut self) {
        self.rates.clear();
        self.by_lambda.clear();
    }
}
