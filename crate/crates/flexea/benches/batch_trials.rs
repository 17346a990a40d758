//! Compares sequential and data-parallel execution of a batch of
//! independent seeded runs.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use flexea::benchmarks::OneMax;
use flexea::engine::FlexEa;
use flexea::rng::RandomSource;
use flexea::runner::{run, TerminationCriterion};
use flexea::schedule::RateSchedule;
use flexea::trials;

fn onemax_batch(c: &mut Criterion) {
    let n = 64;
    let runs = 32;
    let fitness = OneMax::new(n).unwrap();
    let schedule = Arc::new(RateSchedule::recommended(n, 1.5, (n as f64).powi(4)).unwrap());
    let budget = (1_000.0 * n as f64 * (n as f64).ln()).ceil() as u64;
    let job = |i: usize| {
        let mut rng = RandomSource::split(7, i as u64);
        let mut algo = FlexEa::new(schedule.clone(), &fitness, &mut rng).unwrap();
        run(&mut algo, &fitness, TerminationCriterion::budgeted(budget), &mut rng).evaluations
    };

    let mut group = c.benchmark_group("onemax_batch");
    group.bench_with_input(BenchmarkId::new("serial", runs), &runs, |b, &runs| {
        b.iter(|| trials::run_indexed_serial(runs, job))
    });
    #[cfg(feature = "parallel")]
    group.bench_with_input(BenchmarkId::new("parallel", runs), &runs, |b, &runs| {
        b.iter(|| trials::run_indexed(runs, None, job))
    });
    group.finish();
}

criterion_group!(benches, onemax_batch);
criterion_main!(benches);
