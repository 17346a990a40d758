//! Comparison algorithms: stagnation-detection RLS, the heavy-tailed
//! (1+1) EA, two-rate RLS, and the classic (1+1) EA.

use crate::bits::BitString;
use crate::error::Result;
use crate::fitness::FitnessFunction;
use crate::mutation::KBitFlipper;
use crate::rng::RandomSource;
use crate::runner::Algorithm;
use crate::sampling::HeavyTailSampler;
use crate::schedule::binomial;

/// Stagnation-detection RLS: flips exactly `rate` bits, starting at rate 1.
/// After `C(n, rate) * ln(R)` consecutive failures the rate escalates; a
/// strict improvement resets it to 1. Rates are capped at `ceil(n/2)` and
/// cycle back to 1 once that cap is exhausted. By default equal-fitness
/// offspring are rejected, so every non-improvement counts as a failure of
/// the current rate.
#[derive(Debug, Clone)]
pub struct SdRls {
    current: BitString,
    current_fitness: f64,
    rate: usize,
    counter: u64,
    ln_r: f64,
    max_rate: usize,
    accept_equal: bool,
    flipper: KBitFlipper,
    offspring: BitString,
}

impl SdRls {
    pub fn new(
        r_param: f64,
        fitness: &dyn FitnessFunction,
        rng: &mut RandomSource,
    ) -> Result<Self> {
        let initial = BitString::random(fitness.size(), rng)?;
        Self::with_initial(r_param, initial, fitness)
    }

    pub fn with_initial(
        r_param: f64,
        initial: BitString,
        fitness: &dyn FitnessFunction,
    ) -> Result<Self> {
        if !(r_param > 1.0) {
            return Err(crate::error::Error::InvalidParameter(format!(
                "stagnation-detection parameter R = {r_param} must exceed 1"
            )));
        }
        let n = fitness.size();
        let current_fitness = fitness.evaluate(&initial);
        Ok(Self {
            offspring: initial.clone(),
            current: initial,
            current_fitness,
            rate: 1,
            counter: 0,
            ln_r: r_param.ln(),
            max_rate: n.div_ceil(2),
            accept_equal: false,
            flipper: KBitFlipper::new(n),
        })
    }

    /// Flips the equal-fitness acceptance convention.
    pub fn accept_equal(mut self, yes: bool) -> Self {
        self.accept_equal = yes;
        self
    }

    pub fn rate(&self) -> usize {
        self.rate
    }

    pub fn counter(&self) -> u64 {
        self.counter
    }

    fn threshold(&self) -> f64 {
        binomial(self.current.len(), self.rate) * self.ln_r
    }
}

impl Algorithm for SdRls {
    fn current(&self) -> &BitString {
        &self.current
    }

    fn current_fitness(&self) -> f64 {
        self.current_fitness
    }

    fn step(&mut self, fitness: &dyn FitnessFunction, rng: &mut RandomSource) {
        self.flipper
            .flip_into(&self.current, self.rate, rng, &mut self.offspring)
            .expect("rate stays within [1..n]");
        let value = fitness.evaluate(&self.offspring);
        if fitness.strictly_better(value, self.current_fitness) {
            std::mem::swap(&mut self.current, &mut self.offspring);
            self.current_fitness = value;
            self.rate = 1;
            self.counter = 0;
            return;
        }
        if self.accept_equal && value == self.current_fitness {
            std::mem::swap(&mut self.current, &mut self.offspring);
        }
        self.counter += 1;
        if self.counter as f64 >= self.threshold() {
            self.rate += 1;
            if self.rate > self.max_rate {
                self.rate = 1;
            }
            self.counter = 0;
        }
    }
}

/// The heavy-tailed (1+1) EA: draws a rate `r` from a power law over
/// `[1..n/2]`, then flips each bit independently with probability `r/n`.
/// Equal-fitness offspring are accepted by default.
#[derive(Debug, Clone)]
pub struct FastEa {
    current: BitString,
    current_fitness: f64,
    sampler: HeavyTailSampler,
    accept_equal: bool,
}

impl FastEa {
    pub fn new(beta: f64, fitness: &dyn FitnessFunction, rng: &mut RandomSource) -> Result<Self> {
        let initial = BitString::random(fitness.size(), rng)?;
        Self::with_initial(beta, initial, fitness)
    }

    pub fn with_initial(
        beta: f64,
        initial: BitString,
        fitness: &dyn FitnessFunction,
    ) -> Result<Self> {
        let sampler = HeavyTailSampler::for_half_range(fitness.size(), beta)?;
        let current_fitness = fitness.evaluate(&initial);
        Ok(Self {
            current: initial,
            current_fitness,
            sampler,
            accept_equal: true,
        })
    }

    pub fn accept_equal(mut self, yes: bool) -> Self {
        self.accept_equal = yes;
        self
    }

    pub fn sampler(&self) -> &HeavyTailSampler {
        &self.sampler
    }
}

impl Algorithm for FastEa {
    fn current(&self) -> &BitString {
        &self.current
    }

    fn current_fitness(&self) -> f64 {
        self.current_fitness
    }

    fn step(&mut self, fitness: &dyn FitnessFunction, rng: &mut RandomSource) {
        let n = self.current.len();
        let rate = self.sampler.sample(rng);
        let offspring =
            crate::mutation::standard_bit_mutation(&self.current, rate as f64 / n as f64, rng)
                .expect("probability is within [0,1]");
        let value = fitness.evaluate(&offspring);
        let accept = fitness.strictly_better(value, self.current_fitness)
            || (self.accept_equal && value == self.current_fitness);
        if accept {
            self.current = offspring;
            self.current_fitness = value;
        }
    }
}

/// RLS with a two-rate neighborhood: flips exactly 1 or 2 bits, each with
/// probability 1/2, accepting offspring that are not worse.
#[derive(Debug, Clone)]
pub struct Rls12 {
    current: BitString,
    current_fitness: f64,
    flipper: KBitFlipper,
    offspring: BitString,
    last_rate: usize,
}

impl Rls12 {
    pub fn new(fitness: &dyn FitnessFunction, rng: &mut RandomSource) -> Result<Self> {
        let initial = BitString::random(fitness.size(), rng)?;
        Self::with_initial(initial, fitness)
    }

    pub fn with_initial(initial: BitString, fitness: &dyn FitnessFunction) -> Result<Self> {
        let n = fitness.size();
        if n < 2 {
            return Err(crate::error::Error::InvalidParameter(
                "two-rate RLS needs at least 2 bits".into(),
            ));
        }
        let current_fitness = fitness.evaluate(&initial);
        Ok(Self {
            offspring: initial.clone(),
            current: initial,
            current_fitness,
            flipper: KBitFlipper::new(n),
            last_rate: 0,
        })
    }

    pub fn last_rate(&self) -> usize {
        self.last_rate
    }
}

impl Algorithm for Rls12 {
    fn current(&self) -> &BitString {
        &self.current
    }

    fn current_fitness(&self) -> f64 {
        self.current_fitness
    }

    fn step(&mut self, fitness: &dyn FitnessFunction, rng: &mut RandomSource) {
        let rate = rng.int_in(1, 2);
        self.last_rate = rate;
        self.flipper
            .flip_into(&self.current, rate, rng, &mut self.offspring)
            .expect("rate is 1 or 2");
        let value = fitness.evaluate(&self.offspring);
        if fitness.not_worse(value, self.current_fitness) {
            std::mem::swap(&mut self.current, &mut self.offspring);
            self.current_fitness = value;
        }
    }
}

/// The classic (1+1) EA: standard bit mutation with per-bit probability
/// `1/n`, accepting offspring that are not worse.
#[derive(Debug, Clone)]
pub struct OnePlusOneEa {
    current: BitString,
    current_fitness: f64,
}

impl OnePlusOneEa {
    pub fn new(fitness: &dyn FitnessFunction, rng: &mut RandomSource) -> Result<Self> {
        let initial = BitString::random(fitness.size(), rng)?;
        Self::with_initial(initial, fitness)
    }

    pub fn with_initial(initial: BitString, fitness: &dyn FitnessFunction) -> Result<Self> {
        let current_fitness = fitness.evaluate(&initial);
        Ok(Self {
            current: initial,
            current_fitness,
        })
    }
}

impl Algorithm for OnePlusOneEa {
    fn current(&self) -> &BitString {
        &self.current
    }

    fn current_fitness(&self) -> f64 {
        self.current_fitness
    }

    fn step(&mut self, fitness: &dyn FitnessFunction, rng: &mut RandomSource) {
        let n = self.current.len();
        let offspring =
            crate::mutation::standard_bit_mutation(&self.current, 1.0 / n as f64, rng)
                .expect("probability is within [0,1]");
        let value = fitness.evaluate(&offspring);
        if fitness.not_worse(value, self.current_fitness) {
            self.current = offspring;
            self.current_fitness = value;
        }
    }
}
