//! Scratch: LeadingOnes scaling pilot.

use std::sync::Arc;

use flexea::benchmarks::LeadingOnes;
use flexea::engine::FlexEa;
use flexea::rng::RandomSource;
use flexea::runner::{run, TerminationCriterion};
use flexea::schedule::RateSchedule;
use flexea::trials;

fn main() {
    let t0 = std::time::Instant::now();
    let mut rows = Vec::new();
    for n in [64usize, 128, 256, 512] {
        let f = LeadingOnes::new(n).unwrap();
        let schedule = Arc::new(RateSchedule::recommended(n, 1.5, (n as f64).powi(4)).unwrap());
        let budget = (1000.0 * n as f64 * (n as f64).ln()).ceil() as u64;
        let evals: Vec<f64> = trials::run_indexed(200, None, |i| {
            let mut rng = RandomSource::split(12, i as u64);
            let mut algo = FlexEa::new(schedule.clone(), &f, &mut rng).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(budget), &mut rng);
            assert!(rec.success, "run {i} failed at n={n}");
            rec.evaluations as f64
        });
        let m = evals.iter().sum::<f64>() / evals.len() as f64;
        println!(
            "leadingones n={n}: mean={m:.1} mean/n^2={:.4} ({:?})",
            m / (n * n) as f64,
            t0.elapsed()
        );
        rows.push(((n as f64).ln(), m.ln()));
    }
    let xm = rows.iter().map(|r| r.0).sum::<f64>() / rows.len() as f64;
    let ym = rows.iter().map(|r| r.1).sum::<f64>() / rows.len() as f64;
    let num: f64 = rows.iter().map(|r| (r.0 - xm) * (r.1 - ym)).sum();
    let den: f64 = rows.iter().map(|r| (r.0 - xm) * (r.0 - xm)).sum();
    println!("slope={:.4} total {:?}", num / den, t0.elapsed());
}
