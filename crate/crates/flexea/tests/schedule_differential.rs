//! Differential tests for the mass-distribution step: the production path,
//! the re-sorting reference, and the water-filling oracle must agree on
//! random instances, and every output must satisfy the distribution
//! invariants.

use std::collections::BTreeSet;

use flexea::rng::RandomSource;
use flexea::schedule::{ActiveRates, RateSchedule};

/// Random schedule with `sum(lambda) <= 1` plus a random nonempty active set.
fn random_instance(rng: &mut RandomSource, max_n: usize) -> (RateSchedule, Vec<usize>) {
    let n = rng.int_in(1, max_n);
    // Random floors scaled to a random total mass in [0, 1]; sprinkle exact
    // zeros to exercise the degenerate corners.
    let raw: Vec<f64> = (0..n)
        .map(|_| if rng.coin(0.15) { 0.0 } else { rng.real() })
        .collect();
    let raw_total: f64 = raw.iter().sum();
    let target = rng.real();
    let lambda: Vec<f64> = if raw_total > 0.0 {
        raw.iter().map(|v| v / raw_total * target).collect()
    } else {
        raw
    };
    let schedule = RateSchedule::new(lambda, vec![1.0; n]).unwrap();
    let mut active: Vec<usize> = (1..=n).filter(|_| rng.coin(0.3)).collect();
    if active.is_empty() {
        active.push(rng.int_in(1, n));
    }
    (schedule, active)
}

#[test]
fn three_routes_agree_on_random_instances() {
    let mut rng = RandomSource::new(0xd1ff);
    let start = std::time::Instant::now();
    for trial in 0..10_000 {
        let (schedule, active) = random_instance(&mut rng, 64);
        let set = ActiveRates::new(&schedule, active.iter().copied()).unwrap();
        let fast = schedule.distribute_mass(&set).unwrap();
        let resort = schedule.distribute_mass_resort(&active).unwrap();
        let oracle = schedule.water_filling_oracle(&active).unwrap();
        for r in 1..=schedule.size() {
            let (a, b, c) = (
                fast.probability(r),
                resort.probability(r),
                oracle.probability(r),
            );
            assert!((a - b).abs() < 1e-10, "trial {trial} rate {r}: {a} vs {b}");
            assert!((a - c).abs() < 1e-10, "trial {trial} rate {r}: {a} vs {c}");
        }
        let members: BTreeSet<usize> = active.iter().copied().collect();
        fast.validate(&schedule, &members)
            .unwrap_or_else(|e| panic!("trial {trial}: {e}"));
    }
    // The differential suite is meant to stay cheap enough to run on every
    // test invocation.
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());
}

#[test]
fn five_rate_instances_with_dense_active_sets() {
    let mut rng = RandomSource::new(0xbeef);
    for _ in 0..10_000 {
        let (schedule, _) = random_instance(&mut rng, 5);
        let n = schedule.size();
        let mask = rng.int_in(1, (1 << n) - 1);
        let active: Vec<usize> = (1..=n).filter(|r| mask >> (r - 1) & 1 == 1).collect();
        let set = ActiveRates::new(&schedule, active.iter().copied()).unwrap();
        let fast = schedule.distribute_mass(&set).unwrap();
        let oracle = schedule.water_filling_oracle(&active).unwrap();
        for r in 1..=n {
            assert!((fast.probability(r) - oracle.probability(r)).abs() < 1e-10);
        }
    }
}

#[test]
fn full_active_set_with_uniform_floors_is_uniform() {
    for n in [1usize, 2, 7, 33, 64] {
        let c = 1.0 / (2 * n) as f64;
        let schedule = RateSchedule::new(vec![c; n], vec![1.0; n]).unwrap();
        let all: Vec<usize> = (1..=n).collect();
        let set = ActiveRates::new(&schedule, all.iter().copied()).unwrap();
        let p = schedule.distribute_mass(&set).unwrap();
        for r in 1..=n {
            assert!((p.probability(r) - 1.0 / n as f64).abs() < 1e-12);
        }
    }
}
