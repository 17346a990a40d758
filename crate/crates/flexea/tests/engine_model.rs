//! Shadow-model invariants for the engine: an independent, literal
//! re-implementation of the archive bookkeeping replays each step's observed
//! (rate, offspring fitness) pair and must land in exactly the same state as
//! the engine. Run over randomized configurations, this checks elitism,
//! evaluation counting, archive non-emptiness, reset semantics, wraparound
//! succession, and counter bookkeeping in one sweep.

use std::collections::BTreeSet;
use std::sync::Arc;

use flexea::benchmarks::{Jump, LeadingOnes, OneMax, TrimmedOneMax};
use flexea::engine::{ArchiveEvent, FlexEa, StepEvent};
use flexea::fitness::FitnessFunction;
use flexea::rng::RandomSource;
use flexea::schedule::RateSchedule;

struct Shadow {
    active: BTreeSet<usize>,
    counters: Vec<u64>,
    u: u64,
    fitness: f64,
}

impl Shadow {
    fn new(n: usize, initial_fitness: f64) -> Self {
        Self {
            active: [1].into_iter().collect(),
            counters: vec![0; n],
            u: 0,
            fitness: initial_fitness,
        }
    }

    /// Applies one step of the published update rules, using the re-sorting
    /// distribution reference (independent of the engine's cached path).
    fn transition(
        &mut self,
        schedule: &RateSchedule,
        fitness_fn: &dyn FitnessFunction,
        rate: usize,
        offspring_fitness: f64,
    ) {
        let active: Vec<usize> = self.active.iter().copied().collect();
        let p = schedule.distribute_mass_resort(&active).unwrap();
        let min_rate = active[0];
        let p_min = p.probability(min_rate);
        let bound = if p_min > 0.0 {
            schedule.count_bound(min_rate) / p_min
        } else {
            f64::INFINITY
        };
        if fitness_fn.strictly_better(offspring_fitness, self.fitness) {
            self.fitness = offspring_fitness;
            self.active.insert(rate);
            self.u = 0;
            self.counters[rate - 1] = 0;
        } else {
            self.u += 1;
            self.counters[rate - 1] += 1;
            if self.u as f64 >= bound {
                self.u = 0;
                self.active = [1].into_iter().collect();
                self.counters[0] = 0;
            } else if self.counters[rate - 1] as f64 >= schedule.count_bound(rate) {
                self.active.remove(&rate);
                if self.active.is_empty() {
                    let successor = if rate + 1 <= schedule.size() { rate + 1 } else { 1 };
                    self.active.insert(successor);
                    self.counters[successor - 1] = 0;
                }
            }
        }
    }
}

fn random_fitness(n: usize, rng: &mut RandomSource) -> Box<dyn FitnessFunction> {
    match rng.int_in(0, 3) {
        0 => Box::new(OneMax::new(n).unwrap()),
        1 => Box::new(LeadingOnes::new(n).unwrap()),
        2 => Box::new(TrimmedOneMax::new(n, rng.int_in(0, n / 2)).unwrap()),
        _ => Box::new(Jump::new(n, rng.int_in(1, (n / 2).max(1))).unwrap()),
    }
}

fn random_schedule(n: usize, rng: &mut RandomSource) -> RateSchedule {
    if rng.coin(0.5) {
        // Recommended family with small R so expiries and resets are common.
        let beta = 1.1 + 0.8 * rng.real();
        let r_param = 1.2 + 4.0 * rng.real();
        RateSchedule::recommended(n, beta, r_param).unwrap()
    } else {
        // Custom floors and tight count bounds.
        let raw: Vec<f64> = (0..n)
            .map(|_| if rng.coin(0.2) { 0.0 } else { rng.real() })
            .collect();
        let total: f64 = raw.iter().sum();
        let target = rng.real() * 0.9;
        let lambda: Vec<f64> = if total > 0.0 {
            raw.iter().map(|v| v / total * target).collect()
        } else {
            raw
        };
        let bounds: Vec<f64> = (0..n).map(|_| (rng.real() * 12.0).ceil().max(1.0)).collect();
        RateSchedule::new(lambda, bounds).unwrap()
    }
}

#[test]
fn engine_matches_shadow_model_on_randomized_runs() {
    let mut seeder = RandomSource::new(0x5eed);
    for run in 0..1000 {
        let mut rng = RandomSource::split(0xab5e, run);
        let n = seeder.int_in(2, 24);
        let fitness = random_fitness(n, &mut seeder);
        let schedule = Arc::new(random_schedule(n, &mut seeder));
        let mut engine = FlexEa::new(schedule.clone(), fitness.as_ref(), &mut rng).unwrap();
        let mut shadow = Shadow::new(n, engine.current_fitness());
        let mut evaluations = 1u64;
        let mut best = engine.current_fitness();

        for _ in 0..300 {
            let outcome = engine.step(fitness.as_ref(), &mut rng);
            evaluations += 1;

            shadow.transition(
                schedule.as_ref(),
                fitness.as_ref(),
                outcome.rate,
                outcome.offspring_fitness,
            );

            // State agreement with the literal model.
            assert_eq!(engine.archive(), shadow.active.iter().copied().collect::<Vec<_>>());
            assert_eq!(engine.global_counter(), shadow.u);
            assert_eq!(engine.current_fitness(), shadow.fitness);
            for r in 1..=n {
                assert_eq!(engine.failure_counter(r), shadow.counters[r - 1]);
            }

            // Elitism: fitness never degrades.
            assert!(fitness.not_worse(engine.current_fitness(), best));
            best = engine.current_fitness();

            // One evaluation per iteration, plus one for initialization.
            assert_eq!(evaluations, engine.iteration() + 1);

            // The archive is never empty between iterations.
            assert!(!engine.archive().is_empty());

            // Event-level semantics.
            let added = outcome
                .archive_events
                .iter()
                .any(|e| matches!(e, ArchiveEvent::RateAdded(_)));
            if added {
                assert_eq!(outcome.event, StepEvent::StrictImprovement);
            }
            if outcome.event == StepEvent::StrictImprovement {
                assert_eq!(engine.global_counter(), 0);
                assert_eq!(engine.failure_counter(outcome.rate), 0);
            }
            let reset = outcome.archive_events.contains(&ArchiveEvent::GlobalReset);
            let expired = outcome
                .archive_events
                .iter()
                .any(|e| matches!(e, ArchiveEvent::RateExpired(_)));
            assert!(!(reset && expired), "reset and expiry in one step");
            if reset {
                assert_eq!(engine.archive(), vec![1]);
                assert_eq!(engine.global_counter(), 0);
                assert_eq!(engine.failure_counter(1), 0);
            }
        }
    }
}

#[test]
fn archive_only_grows_without_count_bounds() {
    // Infinite count bounds and a floor on every rate: nothing ever expires,
    // so the archive is monotone under inclusion.
    let n = 12;
    let lambda = vec![1.0 / (2 * n) as f64; n];
    let schedule = Arc::new(RateSchedule::new(lambda, vec![f64::INFINITY; n]).unwrap());
    let fitness = OneMax::new(n).unwrap();
    let mut rng = RandomSource::new(99);
    let mut engine = FlexEa::new(schedule, &fitness, &mut rng).unwrap();
    let mut previous: BTreeSet<usize> = engine.archive().into_iter().collect();
    for _ in 0..2000 {
        engine.step(&fitness, &mut rng);
        let now: BTreeSet<usize> = engine.archive().into_iter().collect();
        assert!(previous.is_subset(&now), "archive shrank");
        previous = now;
    }
}

#[test]
fn sole_rate_expires_after_ceil_of_count_bound_failures() {
    // With the archive held at {1} and no successes, rate 1 expires on
    // failure ceil(t_1) exactly (counter semantics: expiry at c >= t_1)
    // unless the global bound fires first. A floor on rate 2 keeps the
    // global bound strictly above t_1 so the expiry is reachable.
    struct Never;
    impl FitnessFunction for Never {
        fn name(&self) -> &str {
            "never"
        }
        fn size(&self) -> usize {
            6
        }
        fn evaluate(&self, _: &flexea::bits::BitString) -> f64 {
            0.0
        }
        fn is_optimum(&self, _: &flexea::bits::BitString) -> bool {
            false
        }
        fn strictly_better(&self, _: f64, _: f64) -> bool {
            false
        }
        fn not_worse(&self, _: f64, _: f64) -> bool {
            true
        }
    }
    let t1 = 7.3;
    let mut lambda = vec![0.0; 6];
    lambda[1] = 0.5;
    let mut bounds = vec![1e9; 6];
    bounds[0] = t1;
    let schedule = Arc::new(RateSchedule::new(lambda, bounds).unwrap());
    let mut rng = RandomSource::new(5);
    let mut engine = FlexEa::new(schedule, &Never, &mut rng).unwrap();
    let mut expired = false;
    for _ in 0..10_000 {
        let before = engine.failure_counter(1);
        let outcome = engine.step(&Never, &mut rng);
        if outcome
            .archive_events
            .iter()
            .any(|e| matches!(e, ArchiveEvent::RateExpired(1)))
        {
            // The expiring step was a rate-1 failure that pushed the counter
            // to exactly ceil(t_1); expiry itself does not clear counters.
            assert_eq!(before + 1, t1.ceil() as u64);
            assert_eq!(engine.failure_counter(1), t1.ceil() as u64);
            expired = true;
            break;
        }
    }
    assert!(expired, "rate 1 never expired (global reset always won)");
}
