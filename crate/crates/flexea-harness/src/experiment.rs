//! Experiment execution: seeded independent trials, sweeps, and paired
//! algorithm comparisons.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use flexea::baselines::{FastEa, OnePlusOneEa, Rls12, SdRls};
use flexea::engine::FlexEa;
use flexea::fitness::FitnessFunction;
use flexea::rng::RandomSource;
use flexea::runner::{run, run_traced, Algorithm, RunRecord, TerminationCriterion};
use flexea::schedule::RateSchedule;
use flexea::trials;

use crate::config::{AlgorithmName, AlgorithmSpec, ExperimentConfig};
use crate::error::{HarnessError, Result};
use crate::records::{
    summary_sidecar_path, write_summary_rows, RecordWriter, SummaryRow, TrialRecord,
};
use crate::stats::SummaryStats;

/// Runs are dispatched to workers in batches of this many per worker; the
/// record CSV grows by whole batches, in run-index order.
const BATCH_PER_WORKER: usize = 4;

fn build_algorithm(
    spec: &AlgorithmSpec,
    schedule: Option<&Arc<RateSchedule>>,
    fitness: &dyn FitnessFunction,
    rng: &mut RandomSource,
) -> Result<Box<dyn Algorithm>> {
    let n = fitness.size();
    Ok(match spec.name {
        AlgorithmName::FlexEa => {
            let schedule = schedule.expect("schedule prebuilt for flex-ea");
            Box::new(FlexEa::new(schedule.clone(), fitness, rng)?)
        }
        AlgorithmName::SdRlsR => {
            let algo = SdRls::new(spec.resolve_r(n), fitness, rng)?;
            Box::new(match spec.accept_equal {
                Some(yes) => algo.accept_equal(yes),
                None => algo,
            })
        }
        AlgorithmName::FastEa => {
            let algo = FastEa::new(spec.beta, fitness, rng)?;
            Box::new(match spec.accept_equal {
                Some(yes) => algo.accept_equal(yes),
                None => algo,
            })
        }
        AlgorithmName::Rls12 => Box::new(Rls12::new(fitness, rng)?),
        AlgorithmName::OpoEa => Box::new(OnePlusOneEa::new(fitness, rng)?),
    })
}

fn trace_path(out: Option<&Path>, run_index: usize) -> PathBuf {
    let stem = out.unwrap_or_else(|| Path::new("experiment"));
    let mut name = stem
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "experiment".into());
    name.push_str(&format!(".run{run_index}.trace.jsonl"));
    stem.with_file_name(name)
}

/// Outcome of [`execute`]: all per-run records plus their summary.
pub struct ExperimentOutcome {
    pub records: Vec<TrialRecord>,
    pub stats: SummaryStats,
    pub budget: u64,
}

/// Runs all trials of `config` (in parallel batches), optionally appending
/// records to `writer` as batches complete.
pub fn execute(config: &ExperimentConfig, mut writer: Option<&mut RecordWriter>) -> Result<ExperimentOutcome> {
    config.validate()?;
    let fitness = config.benchmark.build()?;
    let n = fitness.size();
    let schedule = match config.algorithm.name {
        AlgorithmName::FlexEa => Some(config.algorithm.build_schedule(n)?),
        _ => None,
    };
    let budget = config
        .budget
        .unwrap_or_else(|| config.benchmark.default_budget(n));
    let termination = TerminationCriterion::budgeted(budget);
    let workers = config
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
    let batch = (workers * BATCH_PER_WORKER).max(1);

    let fitness_ref = fitness.as_ref();
    let run_one = |i: usize| -> Result<TrialRecord> {
        let started = Instant::now();
        let mut rng = RandomSource::split(config.base_seed, i as u64);
        let record: RunRecord = if config.trace && config.algorithm.name == AlgorithmName::FlexEa {
            let schedule = schedule.as_ref().expect("schedule prebuilt for flex-ea");
            let mut algo = FlexEa::new(schedule.clone(), fitness_ref, &mut rng)?;
            let rec = run_traced(&mut algo, fitness_ref, termination, &mut rng);
            if let Some(steps) = &rec.trace {
                let path = trace_path(config.out.as_deref(), i);
                let file = std::fs::File::create(&path)
                    .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
                flexea::engine::write_trace(steps, std::io::BufWriter::new(file))?;
            }
            rec
        } else {
            let mut algo = build_algorithm(&config.algorithm, schedule.as_ref(), fitness_ref, &mut rng)?;
            run(algo.as_mut(), fitness_ref, termination, &mut rng)
        };
        Ok(TrialRecord {
            run_index: i,
            seed: config.base_seed,
            evaluations: record.evaluations,
            success: record.success,
            final_fitness: record.final_fitness,
            wall_time_s: started.elapsed().as_secs_f64(),
        })
    };

    let mut records: Vec<TrialRecord> = Vec::with_capacity(config.runs);
    let mut start = 0usize;
    while start < config.runs {
        let count = batch.min(config.runs - start);
        let chunk: Vec<Result<TrialRecord>> =
            trials::run_indexed(count, config.jobs, |j| run_one(start + j));
        for result in chunk {
            let record = result?;
            if let Some(w) = writer.as_deref_mut() {
                w.append(&record)?;
            }
            records.push(record);
        }
        start += count;
    }

    let outcomes: Vec<(u64, bool)> = records.iter().map(|r| (r.evaluations, r.success)).collect();
    let stats = SummaryStats::from_outcomes(&outcomes, config.base_seed);
    Ok(ExperimentOutcome {
        records,
        stats,
        budget,
    })
}

/// Runs one experiment, persisting records to `config.out` (if set) and the
/// summary to a `.summary.json` sidecar.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let mut writer = match &config.out {
        Some(path) => Some(RecordWriter::to_path(path)?),
        None => None,
    };
    let outcome = execute(config, writer.as_mut())?;
    if let Some(path) = &config.out {
        let sidecar = summary_sidecar_path(path);
        let body = serde_json::json!({
            "algorithm": config.algorithm.name.as_str(),
            "benchmark": config.benchmark.name.as_str(),
            "runs": config.runs,
            "base_seed": config.base_seed,
            "budget": outcome.budget,
            "stats": outcome.stats,
        });
        std::fs::write(&sidecar, serde_json::to_string_pretty(&body).unwrap())
            .map_err(|e| HarnessError::Io(format!("{}: {e}", sidecar.display())))?;
    }
    Ok(outcome)
}

/// Parameters a sweep can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    N,
    K,
    Beta,
    RExponent,
    Budget,
}

impl SweepParam {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "n" => Ok(SweepParam::N),
            "k" => Ok(SweepParam::K),
            "beta" => Ok(SweepParam::Beta),
            "r-exponent" => Ok(SweepParam::RExponent),
            "budget" => Ok(SweepParam::Budget),
            other => Err(HarnessError::Config(format!(
                "unknown sweep parameter {other:?}; expected n, k, beta, r-exponent, or budget"
            ))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::N => "n",
            SweepParam::K => "k",
            SweepParam::Beta => "beta",
            SweepParam::RExponent => "r-exponent",
            SweepParam::Budget => "budget",
        }
    }

    fn apply(&self, config: &mut ExperimentConfig, value: f64) -> Result<()> {
        let as_size = |v: f64| -> Result<usize> {
            if v < 1.0 || v.fract() != 0.0 {
                return Err(HarnessError::Config(format!(
                    "value {v} is not a positive integer"
                )));
            }
            Ok(v as usize)
        };
        match self {
            SweepParam::N => config.benchmark.n = Some(as_size(value)?),
            SweepParam::K => config.benchmark.k = Some(as_size(value)?),
            SweepParam::Beta => config.algorithm.beta = value,
            SweepParam::RExponent => config.algorithm.r_exponent = value,
            SweepParam::Budget => config.budget = Some(as_size(value)? as u64),
        }
        Ok(())
    }
}

/// Runs the base experiment once per value of `param`, returning one summary
/// row per value.
pub fn sweep(
    base: &ExperimentConfig,
    param: SweepParam,
    values: &[f64],
) -> Result<Vec<SummaryRow>> {
    if values.is_empty() {
        return Err(HarnessError::Config("sweep needs at least one value".into()));
    }
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let mut config = base.clone();
        config.out = None;
        param.apply(&mut config, value)?;
        let outcome = execute(&config, None)?;
        rows.push(SummaryRow::new(
            config.algorithm.name.as_str(),
            config.benchmark.name.as_str(),
            param.as_str(),
            value,
            outcome.budget,
            &outcome.stats,
        ));
    }
    Ok(rows)
}

/// Runs each configuration against the shared benchmark with common per-run
/// seeds (paired comparison); rejects configs whose benchmarks differ.
pub fn compare(configs: &[ExperimentConfig]) -> Result<Vec<SummaryRow>> {
    if configs.is_empty() {
        return Err(HarnessError::Config("compare needs at least one config".into()));
    }
    let reference = serde_json::to_string(&configs[0].benchmark).unwrap();
    for config in &configs[1..] {
        let bench = serde_json::to_string(&config.benchmark).unwrap();
        if bench != reference {
            return Err(HarnessError::Config(
                "compare requires every config to share the same benchmark".into(),
            ));
        }
        if config.base_seed != configs[0].base_seed {
            return Err(HarnessError::Config(
                "compare requires a common base seed for paired runs".into(),
            ));
        }
    }
    let mut rows = Vec::with_capacity(configs.len());
    for (idx, config) in configs.iter().enumerate() {
        let mut config = config.clone();
        config.out = None;
        let outcome = execute(&config, None)?;
        rows.push(SummaryRow::new(
            config.algorithm.name.as_str(),
            config.benchmark.name.as_str(),
            "algorithm",
            idx as f64,
            outcome.budget,
            &outcome.stats,
        ));
    }
    Ok(rows)
}

/// Convenience: sweep + persist the summary CSV.
pub fn sweep_to_file(
    base: &ExperimentConfig,
    param: SweepParam,
    values: &[f64],
    out: &Path,
) -> Result<Vec<SummaryRow>> {
    let rows = sweep(base, param, values)?;
    write_summary_rows(out, &rows)?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{AlgorithmSpec, BenchmarkName, BenchmarkSpec};

    fn onemax_config(n: usize, runs: usize) -> ExperimentConfig {
        let mut config = ExperimentConfig::new(
            AlgorithmSpec::named(AlgorithmName::FlexEa),
            BenchmarkSpec {
                n: Some(n),
                ..BenchmarkSpec::named(BenchmarkName::Onemax)
            },
        );
        config.runs = runs;
        config.base_seed = 7;
        config
    }

    #[test]
    fn rerun_is_deterministic() {
        let config = onemax_config(24, 16);
        let a = execute(&config, None).unwrap();
        let b = execute(&config, None).unwrap();
        let evals_a: Vec<u64> = a.records.iter().map(|r| r.evaluations).collect();
        let evals_b: Vec<u64> = b.records.iter().map(|r| r.evaluations).collect();
        assert_eq!(evals_a, evals_b);
        assert_eq!(a.stats.mean, b.stats.mean);
        assert_eq!(a.stats.ci_low, b.stats.ci_low);
    }

    #[test]
    fn impossible_budget_gives_zero_success_rate() {
        let mut config = onemax_config(32, 8);
        config.budget = Some(2); // cannot reach the optimum from a uniform start
        let outcome = execute(&config, None).unwrap();
        assert_eq!(outcome.stats.success_rate, 0.0);
        assert!(outcome.records.iter().all(|r| r.evaluations == 2));
    }

    #[test]
    fn sweep_produces_one_row_per_value() {
        let mut config = onemax_config(16, 10);
        config.runs = 10;
        let rows = sweep(&config, SweepParam::N, &[16.0, 32.0, 64.0]).unwrap();
        assert_eq!(rows.len(), 3);
        // Runtime grows with n; overlapping noise is tolerable but with 10
        // runs and 4x size steps the ordering is stable.
        assert!(rows[0].mean.unwrap() < rows[2].mean.unwrap());
    }

    #[test]
    fn sweep_rejects_empty_and_unknown() {
        let config = onemax_config(16, 4);
        assert!(sweep(&config, SweepParam::N, &[]).is_err());
        assert!(SweepParam::parse("gamma").is_err());
    }

    #[test]
    fn compare_runs_paired_seeds() {
        let mut a = onemax_config(16, 12);
        let mut b = onemax_config(16, 12);
        b.algorithm = AlgorithmSpec::named(AlgorithmName::Rls12);
        a.base_seed = 3;
        b.base_seed = 3;
        let rows = compare(&[a.clone(), b]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].algorithm, "flex-ea");
        assert_eq!(rows[1].algorithm, "rls12");

        // The same config twice gives identical statistics.
        let twin = compare(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(twin[0].mean, twin[1].mean);
        assert_eq!(twin[0].sd, twin[1].sd);
    }

    #[test]
    fn compare_rejects_mismatched_benchmarks() {
        let a = onemax_config(16, 4);
        let mut b = onemax_config(32, 4);
        b.base_seed = a.base_seed;
        assert!(compare(&[a, b]).is_err());
    }
}
