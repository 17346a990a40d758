//! The `validate` subcommand: fast property suites over the distribution
//! step, the parameter schemes, and the engine bookkeeping.

use std::collections::BTreeSet;
use std::sync::Arc;

use flexea::benchmarks::OneMax;
use flexea::engine::FlexEa;
use flexea::rng::RandomSource;
use flexea::schedule::{heavy_tailed_lower_bounds, ActiveRates, RateSchedule};

use crate::error::{HarnessError, Result};

pub struct CheckReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, result: std::result::Result<String, String>) -> CheckReport {
    match result {
        Ok(detail) => CheckReport {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckReport {
            name,
            passed: false,
            detail,
        },
    }
}

fn distribution_agreement() -> std::result::Result<String, String> {
    let mut rng = RandomSource::new(0x7e57);
    let mut worst: f64 = 0.0;
    for trial in 0..10_000 {
        let n = rng.int_in(1, 64);
        let raw: Vec<f64> = (0..n).map(|_| rng.real()).collect();
        let total: f64 = raw.iter().sum();
        let target = rng.real();
        let lambda: Vec<f64> = raw.iter().map(|v| v / total * target).collect();
        let schedule = RateSchedule::new(lambda, vec![1.0; n]).map_err(|e| e.to_string())?;
        let mut active: Vec<usize> = (1..=n).filter(|_| rng.coin(0.3)).collect();
        if active.is_empty() {
            active.push(rng.int_in(1, n));
        }
        let set =
            ActiveRates::new(&schedule, active.iter().copied()).map_err(|e| e.to_string())?;
        let fast = schedule.distribute_mass(&set).map_err(|e| e.to_string())?;
        let oracle = schedule
            .water_filling_oracle(&active)
            .map_err(|e| e.to_string())?;
        for r in 1..=n {
            let gap = (fast.probability(r) - oracle.probability(r)).abs();
            worst = worst.max(gap);
            if gap > 1e-10 {
                return Err(format!("trial {trial}: rate {r} differs by {gap:e}"));
            }
        }
        let members: BTreeSet<usize> = active.iter().copied().collect();
        fast.validate(&schedule, &members)
            .map_err(|e| format!("trial {trial}: {e}"))?;
    }
    Ok(format!("10^4 instances, worst gap {worst:.2e}"))
}

fn heavy_tail_mass() -> std::result::Result<String, String> {
    let mut worst: f64 = 0.0;
    for n in [1usize, 10, 100, 10_000] {
        for beta in [1.1, 1.5, 1.9] {
            let lambda = heavy_tailed_lower_bounds(n, beta).map_err(|e| e.to_string())?;
            let total: f64 = lambda.iter().rev().sum();
            let gap = (total - 0.5).abs();
            worst = worst.max(gap);
            if gap > 1e-12 {
                return Err(format!("n={n} beta={beta}: mass {total}"));
            }
        }
    }
    Ok(format!("worst deviation from 1/2: {worst:.2e}"))
}

fn count_bound_recurrence() -> std::result::Result<String, String> {
    for n in [8usize, 33, 64] {
        let t = flexea::schedule::standard_sd_count_bounds(n, 12.5).map_err(|e| e.to_string())?;
        for i in 2..=n {
            let expect = (n - i + 1) as f64 / i as f64;
            let got = t[i - 1] / t[i - 2];
            if (got - expect).abs() / expect > 1e-12 {
                return Err(format!("n={n} i={i}: ratio {got} vs {expect}"));
            }
        }
    }
    Ok("ratio t_i/t_(i-1) exact for n <= 64".into())
}

fn engine_bookkeeping() -> std::result::Result<String, String> {
    let mut total_steps = 0u64;
    for run in 0..200u64 {
        let mut rng = RandomSource::split(0xeea, run);
        let n = 4 + (run as usize % 20);
        let fitness = OneMax::new(n).map_err(|e| e.to_string())?;
        let schedule = Arc::new(
            RateSchedule::recommended(n, 1.5, 2.0 + run as f64 % 7.0).map_err(|e| e.to_string())?,
        );
        let mut engine = FlexEa::new(schedule, &fitness, &mut rng).map_err(|e| e.to_string())?;
        let mut best = engine.current_fitness();
        for _ in 0..300 {
            engine.step(&fitness, &mut rng);
            total_steps += 1;
            if engine.current_fitness() < best {
                return Err(format!("run {run}: fitness decreased"));
            }
            best = engine.current_fitness();
            if engine.archive().is_empty() {
                return Err(format!("run {run}: archive emptied"));
            }
        }
        if engine.iteration() != 300 {
            return Err(format!("run {run}: iteration counter drifted"));
        }
    }
    Ok(format!("{total_steps} instrumented steps, invariants held"))
}

fn replay_determinism() -> std::result::Result<String, String> {
    let n = 20;
    let fitness = OneMax::new(n).map_err(|e| e.to_string())?;
    let schedule =
        Arc::new(RateSchedule::recommended(n, 1.5, 100.0).map_err(|e| e.to_string())?);
    let trace = |seed: u64| -> std::result::Result<Vec<u8>, String> {
        let mut rng = RandomSource::split(seed, 5);
        let mut engine = FlexEa::new(schedule.clone(), &fitness, &mut rng)
            .map_err(|e| e.to_string())?;
        let rec = flexea::runner::run_traced(
            &mut engine,
            &fitness,
            flexea::runner::TerminationCriterion::budgeted(2_000),
            &mut rng,
        );
        let mut buf = Vec::new();
        flexea::engine::write_trace(rec.trace.as_ref().unwrap(), &mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    };
    if trace(99)? != trace(99)? {
        return Err("identical seeds produced different traces".into());
    }
    Ok("bit-identical replay".into())
}

/// Runs every suite, printing one line per check. Returns an error if any
/// check failed.
pub fn run_all() -> Result<Vec<CheckReport>> {
    let reports = vec![
        check("distribution-agreement", distribution_agreement()),
        check("heavy-tail-mass", heavy_tail_mass()),
        check("count-bound-recurrence", count_bound_recurrence()),
        check("engine-bookkeeping", engine_bookkeeping()),
        check("replay-determinism", replay_determinism()),
    ];
    for report in &reports {
        println!(
            "[{}] {}: {}",
            if report.passed { "PASS" } else { "FAIL" },
            report.name,
            report.detail
        );
    }
    if reports.iter().all(|r| r.passed) {
        Ok(reports)
    } else {
        Err(HarnessError::Validation(
            "one or more property suites failed".into(),
        ))
    }
}
