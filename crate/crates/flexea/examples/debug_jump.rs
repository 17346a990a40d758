//! Scratch: inspect a single slow jump run.

use std::sync::Arc;

use flexea::benchmarks::Jump;
use flexea::engine::{ArchiveEvent, FlexEa, StepEvent};
use flexea::FitnessFunction;
use flexea::rng::RandomSource;
use flexea::schedule::RateSchedule;

fn main() {
    let n = 20;
    let k = 2;
    let f = Jump::new(n, k).unwrap();
    let schedule = Arc::new(RateSchedule::recommended(n, 1.5, (n as f64).powi(4)).unwrap());
    println!(
        "lambda_1={:.4} lambda_2={:.4} t_1={:.1} t_2={:.1}",
        schedule.lambda(1),
        schedule.lambda(2),
        schedule.count_bound(1),
        schedule.count_bound(2)
    );
    let mut slow = 0;
    let mut total = 0f64;
    let mut worst = (0u64, 0u64);
    for i in 0..500u64 {
        let mut rng = RandomSource::split(13, i);
        let mut algo = FlexEa::new(schedule.clone(), &f, &mut rng).unwrap();
        let mut evals = 1u64;
        let mut resets = 0u64;
        let mut successions = 0u64;
        let mut plateau_at = None;
        while !f.is_optimum(algo.current()) && evals < 200_000 {
            let out = algo.step(&f, &mut rng);
            evals += 1;
            if plateau_at.is_none() && algo.current_fitness() == n as f64 {
                plateau_at = Some(evals);
            }
            for e in &out.archive_events {
                match e {
                    ArchiveEvent::GlobalReset => resets += 1,
                    ArchiveEvent::SuccessionTo(_) => successions += 1,
                    _ => {}
                }
            }
            let _ = out.event == StepEvent::Rejected;
        }
        total += evals as f64;
        if evals > 19_000 {
            slow += 1;
            if evals > worst.0 {
                worst = (evals, i);
            }
            println!(
                "run {i}: evals={evals} plateau_at={plateau_at:?} resets={resets} successions={successions} archive={:?}",
                algo.archive()
            );
        }
    }
    println!("mean={:.1} ratio={:.2} slow_runs={slow} worst={worst:?}", total / 500.0, total / 500.0 / 190.0);
}
