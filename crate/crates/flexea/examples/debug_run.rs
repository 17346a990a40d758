//! Scratch: replay single suspicious runs.

use std::sync::Arc;

use flexea::benchmarks::{Jump, LeadingOnes, OneMax};
use flexea::engine::FlexEa;
use flexea::rng::RandomSource;
use flexea::runner::{run, TerminationCriterion};
use flexea::schedule::RateSchedule;
use flexea::FitnessFunction;

fn check(name: &str, f: &dyn FitnessFunction, seed: u64, runs: usize, budget: u64) {
    let n = f.size();
    let schedule = Arc::new(RateSchedule::recommended(n, 1.5, (n as f64).powi(4)).unwrap());
    let mut worst = 0u64;
    let mut failures = Vec::new();
    let mut total = 0f64;
    for i in 0..runs as u64 {
        let mut rng = RandomSource::split(seed, i);
        let mut algo = FlexEa::new(schedule.clone(), f, &mut rng).unwrap();
        let rec = run(&mut algo, f, TerminationCriterion::budgeted(budget), &mut rng);
        worst = worst.max(rec.evaluations);
        total += rec.evaluations as f64;
        if !rec.success {
            failures.push(i);
        }
    }
    println!(
        "{name} n={n}: mean={:.1} worst={worst} failures={failures:?}",
        total / runs as f64
    );
}

fn main() {
    for n in [16usize, 64, 128, 256, 512] {
        let f = OneMax::new(n).unwrap();
        let budget = (1000.0 * n as f64 * (n as f64).ln()).ceil() as u64;
        check("onemax", &f, 11, 200, budget);
    }
    for n in [64usize, 128] {
        let f = LeadingOnes::new(n).unwrap();
        let budget = (1000.0 * n as f64 * (n as f64).ln()).ceil() as u64;
        check("leadingones", &f, 12, 50, budget);
    }
    for (n, k, runs) in [(20usize, 2usize, 500usize), (40, 2, 500), (80, 2, 500), (30, 3, 300)] {
        let f = Jump::new(n, k).unwrap();
        let budget = (100.0 * flexea::schedule::binomial(n, k)).ceil() as u64;
        check("jump", &f, 13, runs, budget);
        let c = flexea::schedule::binomial(n, k);
        println!("  (budget={budget} C(n,k)={c})");
    }
}
