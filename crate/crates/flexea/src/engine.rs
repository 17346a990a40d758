//! The archive-driven search engine.
//!
//! Each iteration distributes the selection probability mass over the
//! archive of active rates, samples a rate, and applies an exact-`r`-bit
//! flip to the current solution. Strict improvements add the sampled rate to
//! the archive and clear its failure counter; failures increment both the
//! rate's counter and a global counter. A rate whose counter reaches its
//! count bound expires from the archive, and an archive that empties is
//! reseeded with the successor rate. If the global counter reaches
//! `t_m / p_m` (the count bound of the smallest active rate scaled by its
//! current selection probability), the whole archive resets to `{1}`.
//!
//! The frequency vector depends only on the archive, so it is cached and
//! rebuilt only when the archive changes. The acceptance rule is elitist:
//! equal-fitness offspring replace the parent (a random walk on plateaus)
//! but still count as failures.

use std::sync::Arc;

use serde::Serialize;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fitness::FitnessFunction;
use crate::mutation::KBitFlipper;
use crate::rng::RandomSource;
use crate::sampling::CdfSampler;
use crate::schedule::{ActiveRates, FrequencyVector, RateSchedule};

/// What happened to the offspring in one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepEvent {
    StrictImprovement,
    EqualAccepted,
    Rejected,
}

/// Archive bookkeeping triggered by one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchiveEvent {
    /// The sampled rate strictly improved and was not yet in the archive.
    RateAdded(usize),
    /// The rate's failure counter reached its count bound while active.
    RateExpired(usize),
    /// The global counter reached its bound; the archive reset to `{1}`.
    GlobalReset,
    /// The archive emptied and was reseeded with this successor rate.
    SuccessionTo(usize),
}

/// Outcome of a single step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub rate: usize,
    pub offspring_fitness: f64,
    pub event: StepEvent,
    pub archive_events: Vec<ArchiveEvent>,
}

/// One line of a run trace, serialized as one JSON document per step.
#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    /// Iteration index (0-based).
    pub t: u64,
    /// Sampled rate.
    pub rate: usize,
    pub event: StepEvent,
    /// Archive contents after the step, ascending.
    pub archive: Vec<usize>,
    /// Global counter after the step.
    pub u: u64,
    /// Current fitness after the step.
    pub fitness: f64,
}

/// The engine state: current solution, rate archive, and counters.
#[derive(Debug, Clone)]
pub struct FlexEa {
    schedule: Arc<RateSchedule>,
    active: ActiveRates,
    counters: Vec<u64>,
    global_counter: u64,
    current: BitString,
    current_fitness: f64,
    iteration: u64,
    freqs: FrequencyVector,
    sampler: CdfSampler,
    freqs_stale: bool,
    flipper: KBitFlipper,
    offspring: BitString,
}

impl FlexEa {
    /// Initializes with a uniform random solution, archive `{1}`, and all
    /// counters zero. Evaluates the initial solution once.
    pub fn new(
        schedule: Arc<RateSchedule>,
        fitness: &dyn FitnessFunction,
        rng: &mut RandomSource,
    ) -> Result<Self> {
        let initial = BitString::random(fitness.size(), rng)?;
        Self::with_initial(schedule, initial, fitness)
    }

    /// Initializes from a caller-supplied solution (warm start). Evaluates
    /// it once.
    pub fn with_initial(
        schedule: Arc<RateSchedule>,
        initial: BitString,
        fitness: &dyn FitnessFunction,
    ) -> Result<Self> {
        let n = fitness.size();
        if schedule.size() != n {
            return Err(Error::InvalidConfiguration(format!(
                "schedule is sized for {} rates but the problem has {n} bits",
                schedule.size()
            )));
        }
        if initial.len() != n {
            return Err(Error::InvalidConfiguration(format!(
                "initial solution has {} bits but the problem has {n}",
                initial.len()
            )));
        }
        let active = ActiveRates::new(&schedule, [1])?;
        let freqs = schedule.distribute_mass(&active)?;
        let mut sampler = CdfSampler::new();
        sampler.rebuild(freqs.as_slice());
        let current_fitness = fitness.evaluate(&initial);
        let offspring = initial.clone();
        Ok(Self {
            schedule,
            active,
            counters: vec![0; n],
            global_counter: 0,
            current: initial,
            current_fitness,
            iteration: 0,
            freqs,
            sampler,
            freqs_stale: false,
            flipper: KBitFlipper::new(n),
            offspring,
        })
    }

    pub fn schedule(&self) -> &RateSchedule {
        &self.schedule
    }

    pub fn current(&self) -> &BitString {
        &self.current
    }

    pub fn current_fitness(&self) -> f64 {
        self.current_fitness
    }

    /// Archive contents, ascending.
    pub fn archive(&self) -> Vec<usize> {
        self.active.to_sorted_vec()
    }

    pub fn archive_contains(&self, rate: usize) -> bool {
        self.active.contains(rate)
    }

    /// Failure counter of `rate` (1-based).
    pub fn failure_counter(&self, rate: usize) -> u64 {
        self.counters[rate - 1]
    }

    pub fn global_counter(&self) -> u64 {
        self.global_counter
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// The frequency vector the next step will sample from.
    pub fn frequencies(&mut self) -> Result<&FrequencyVector> {
        self.refresh_freqs()?;
        Ok(&self.freqs)
    }

    fn refresh_freqs(&mut self) -> Result<()> {
        if self.freqs_stale {
            self.freqs = self.schedule.distribute_mass(&self.active)?;
            self.sampler.rebuild(self.freqs.as_slice());
            self.freqs_stale = false;
        }
        Ok(())
    }

    /// Runs one iteration: exactly one fitness evaluation.
    pub fn step(&mut self, fitness: &dyn FitnessFunction, rng: &mut RandomSource) -> StepOutcome {
        self.refresh_freqs()
            .expect("archive is never empty between iterations");

        let min_rate = self
            .active
            .min_rate()
            .expect("archive is never empty between iterations");
        let p_min = self.freqs.probability(min_rate);
        let global_bound = if p_min > 0.0 {
            self.schedule.count_bound(min_rate) / p_min
        } else {
            f64::INFINITY
        };

        let rate = self.sampler.sample(rng);
        self.flipper
            .flip_into(&self.current, rate, rng, &mut self.offspring)
            .expect("sampled rate is within [1..n]");
        let offspring_fitness = fitness.evaluate(&self.offspring);

        let mut archive_events = Vec::new();
        let event;
        if fitness.strictly_better(offspring_fitness, self.current_fitness) {
            std::mem::swap(&mut self.current, &mut self.offspring);
            self.current_fitness = offspring_fitness;
            if self.active.insert(rate) {
                archive_events.push(ArchiveEvent::RateAdded(rate));
                self.freqs_stale = true;
            }
            self.global_counter = 0;
            self.counters[rate - 1] = 0;
            event = StepEvent::StrictImprovement;
        } else {
            if offspring_fitness == self.current_fitness {
                std::mem::swap(&mut self.current, &mut self.offspring);
                event = StepEvent::EqualAccepted;
            } else {
                event = StepEvent::Rejected;
            }
            self.global_counter += 1;
            self.counters[rate - 1] += 1;
            if self.global_counter as f64 >= global_bound {
                self.global_counter = 0;
                self.active.clear();
                self.active.insert(1);
                self.counters[0] = 0;
                self.freqs_stale = true;
                archive_events.push(ArchiveEvent::GlobalReset);
            } else if self.counters[rate - 1] as f64 >= self.schedule.count_bound(rate) {
                if self.active.remove(rate) {
                    archive_events.push(ArchiveEvent::RateExpired(rate));
                    self.freqs_stale = true;
                }
                if self.active.is_empty() {
                    let successor = if rate + 1 <= self.schedule.size() {
                        rate + 1
                    } else {
                        1
                    };
                    self.active.insert(successor);
                    self.counters[successor - 1] = 0;
                    archive_events.push(ArchiveEvent::SuccessionTo(successor));
                }
            }
        }
        self.iteration += 1;

        StepOutcome {
            rate,
            offspring_fitness,
            event,
            archive_events,
        }
    }

    /// Like [`FlexEa::step`], but also returns the trace line for this step.
    pub fn step_traced(
        &mut self,
        fitness: &dyn FitnessFunction,
        rng: &mut RandomSource,
    ) -> (StepOutcome, TraceStep) {
        let t = self.iteration;
        let outcome = self.step(fitness, rng);
        let trace = TraceStep {
            t,
            rate: outcome.rate,
            event: outcome.event,
            archive: self.archive(),
            u: self.global_counter,
            fitness: self.current_fitness,
        };
        (outcome, trace)
    }
}

/// Serializes a trace as JSONL: one JSON document per step.
pub fn write_trace<W: std::io::Write>(steps: &[TraceStep], mut out: W) -> Result<()> {
    for step in steps {
        serde_json::to_writer(&mut out, step)
            .map_err(|e| Error::InvalidArgument(format!("trace serialization failed: {e}")))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::OneMax;

    fn schedule(lambda: Vec<f64>, t: Vec<f64>) -> Arc<RateSchedule> {
        Arc::new(RateSchedule::new(lambda, t).unwrap())
    }

    fn engine_at(
        schedule: &Arc<RateSchedule>,
        bits: &str,
        fitness: &dyn FitnessFunction,
        active: &[usize],
        counters: &[u64],
        u: u64,
    ) -> FlexEa {
        let mut e =
            FlexEa::with_initial(schedule.clone(), BitString::parse(bits).unwrap(), fitness)
                .unwrap();
        e.active = ActiveRates::new(schedule, active.iter().copied()).unwrap();
        e.counters = counters.to_vec();
        e.global_counter = u;
        e.freqs_stale = true;
        e
    }

    #[test]
    fn init_state() {
        let n = 4;
        let s = schedule(vec![0.1; n], vec![100.0; n]);
        let f = OneMax::new(n).unwrap();
        let mut rng = RandomSource::new(5);
        let mut expect_rng = RandomSource::new(5);
        let e = FlexEa::new(s, &f, &mut rng).unwrap();
        assert_eq!(e.archive(), vec![1]);
        assert_eq!(e.global_counter(), 0);
        assert!((1..=n).all(|r| e.failure_counter(r) == 0));
        // The current solution is exactly the source's first n-bit draw.
        let expected = BitString::random(n, &mut expect_rng).unwrap();
        assert_eq!(*e.current(), expected);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = schedule(vec![0.1; 4], vec![100.0; 4]);
        let f = OneMax::new(5).unwrap();
        let mut rng = RandomSource::new(5);
        assert!(FlexEa::new(s, &f, &mut rng).is_err());
    }

    #[test]
    fn strict_improvement_at_rate_one_keeps_archive() {
        let n = 4;
        let s = schedule(vec![0.0; n], vec![100.0; n]);
        let f = OneMax::new(n).unwrap();
        // lambda = 0 everywhere: rate 1 (the only active rate) always sampled.
        let mut e = engine_at(&s, "0111", &f, &[1], &[0; 4], 0);
        let mut rng = RandomSource::new(1);
        // A 1-bit flip either improves (flips the zero) or worsens; step
        // until the improvement happens.
        loop {
            let out = e.step(&f, &mut rng);
            assert_eq!(out.rate, 1);
            if out.event == StepEvent::StrictImprovement {
                assert!(out.archive_events.is_empty()); // rate 1 already active
                break;
            }
        }
        assert_eq!(e.archive(), vec![1]);
        assert_eq!(e.global_counter(), 0);
        assert_eq!(e.failure_counter(1), 0);
    }

    #[test]
    fn expiry_with_sole_active_rate_succeeds_to_next() {
        let n = 4;
        // t_2 = 3: three failures at rate 2 expire it.
        let s = schedule(vec![0.0; n], vec![100.0, 3.0, 100.0, 100.0]);
        let f = OneMax::new(n).unwrap();
        let mut e = engine_at(&s, "1111", &f, &[2], &[0, 2, 0, 0], 0);
        let mut rng = RandomSource::new(2);
        // All-ones is optimal: any 2-bit flip strictly worsens, so this step
        // is a failure that pushes the counter to 3 = t_2.
        let out = e.step(&f, &mut rng);
        assert_eq!(out.event, StepEvent::Rejected);
        assert_eq!(
            out.archive_events,
            vec![ArchiveEvent::RateExpired(2), ArchiveEvent::SuccessionTo(3)]
        );
        assert_eq!(e.archive(), vec![3]);
        assert_eq!(e.failure_counter(3), 0);
    }

    #[test]
    fn expiry_at_rate_n_wraps_to_rate_one() {
        let n = 4;
        // Stale counter: c_4 = 5 is one failure short of t_4 = 6, while the
        // global bound (also 6 here) is still far from u = 0.
        let s = schedule(vec![0.0; n], vec![100.0, 100.0, 100.0, 6.0]);
        let f = OneMax::new(n).unwrap();
        let mut e = engine_at(&s, "1111", &f, &[4], &[0, 0, 0, 5], 0);
        let mut rng = RandomSource::new(3);
        let out = e.step(&f, &mut rng);
        assert_eq!(
            out.archive_events,
            vec![ArchiveEvent::RateExpired(4), ArchiveEvent::SuccessionTo(1)]
        );
        assert_eq!(e.archive(), vec![1]);
        assert_eq!(e.failure_counter(1), 0);
    }

    #[test]
    fn inactive_rate_success_joins_archive() {
        let n = 8;
        // Rate 3 has a floor; rates 1 and 5 are active.
        let mut lambda = vec![0.0; n];
        lambda[2] = 0.9;
        let s = schedule(lambda, vec![1e9; n]);
        let f = OneMax::new(n).unwrap();
        let mut e = engine_at(&s, "00000000", &f, &[1, 5], &[0; 8], 3);
        let mut rng = RandomSource::new(4);
        let mut found = false;
        for _ in 0..1000 {
            let out = e.step(&f, &mut rng);
            if out.rate == 3 && out.event == StepEvent::StrictImprovement {
                assert!(out.archive_events.contains(&ArchiveEvent::RateAdded(3)));
                found = true;
                break;
            }
        }
        assert!(found, "no successful rate-3 step within 1000 iterations");
        assert_eq!(e.archive(), vec![1, 3, 5]);
        assert_eq!(e.failure_counter(3), 0);
        assert_eq!(e.global_counter(), 0);
    }

    #[test]
    fn global_reset_keeps_other_counters() {
        let n = 8;
        // t_1 tiny so the global bound t_1 / p_1 trips immediately.
        let mut t = vec![1e9; n];
        t[0] = 0.1;
        let s = schedule(vec![0.0; n], t);
        let f = OneMax::new(n).unwrap();
        let mut e = engine_at(&s, "11111111", &f, &[1, 4, 7], &[0, 0, 0, 9, 0, 0, 5, 0], 0);
        let mut rng = RandomSource::new(6);
        // Optimal current: the step fails, u reaches 1 >= t_1 / p_1.
        let out = e.step(&f, &mut rng);
        assert_eq!(out.archive_events, vec![ArchiveEvent::GlobalReset]);
        assert_eq!(e.archive(), vec![1]);
        assert_eq!(e.global_counter(), 0);
        assert_eq!(e.failure_counter(1), 0);
        assert_eq!(e.failure_counter(4), 9 + u64::from(out.rate == 4));
        assert_eq!(e.failure_counter(7), 5 + u64::from(out.rate == 7));
    }

    #[test]
    fn expired_inactive_rate_is_noop() {
        let n = 4;
        let mut lambda = vec![0.0; n];
        lambda[3] = 0.5; // rate 4 samplable but inactive
        let s = schedule(lambda, vec![1e9, 1e9, 1e9, 2.0]);
        let f = OneMax::new(n).unwrap();
        let mut e = engine_at(&s, "1111", &f, &[1], &[0, 0, 0, 1], 0);
        let mut rng = RandomSource::new(8);
        loop {
            let out = e.step(&f, &mut rng);
            if out.rate == 4 {
                // Counter hits 2 >= t_4, but rate 4 was never active:
                // no expiry event, archive unchanged.
                assert!(out.archive_events.is_empty());
                break;
            }
        }
        assert_eq!(e.archive(), vec![1]);
        assert!(e.failure_counter(4) >= 2);
    }

    #[test]
    fn equal_fitness_replaces_parent_but_counts_failure() {
        let n = 4;
        struct Flat;
        impl FitnessFunction for Flat {
            fn name(&self) -> &str {
                "flat"
            }
            fn size(&self) -> usize {
                4
            }
            fn evaluate(&self, _: &BitString) -> f64 {
                0.0
            }
            fn is_optimum(&self, _: &BitString) -> bool {
                false
            }
        }
        let s = schedule(vec![0.0; n], vec![1e9; n]);
        let mut e = engine_at(&s, "0000", &Flat, &[1], &[0; 4], 0);
        let mut rng = RandomSource::new(9);
        let before = e.current().clone();
        let out = e.step(&Flat, &mut rng);
        assert_eq!(out.event, StepEvent::EqualAccepted);
        assert_ne!(*e.current(), before);
        assert_eq!(e.global_counter(), 1);
        assert_eq!(e.failure_counter(1), 1);
    }
}
