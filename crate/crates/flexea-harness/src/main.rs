//! CLI entry point. Exit codes: 0 success, 1 configuration error, 2 I/O
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use flexea_harness::config::{
    AlgorithmName, AlgorithmSpec, BenchmarkName, BenchmarkSpec, ExperimentConfig,
};
use flexea_harness::error::{HarnessError, Result};
use flexea_harness::experiment::{compare, run_experiment, sweep_to_file, SweepParam};
use flexea_harness::records::write_summary_rows;

#[derive(Parser)]
#[command(
    name = "flexea",
    about = "Experiment harness for an evolutionary algorithm with a dynamic mutation-rate archive",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the experiment subcommands; every flag overrides the
/// corresponding config-file field.
#[derive(Args, Clone)]
struct ExperimentArgs {
    /// JSON experiment config (see docs/config-schema.json)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Algorithm: flex-ea, sd-rls-r, fast-ea, rls12, opo-ea
    #[arg(long)]
    algo: Option<String>,
    /// Benchmark: onemax, leadingones, trimmed-onemax, jump, mst, two-rates, hurdles
    #[arg(long)]
    problem: Option<String>,
    /// Problem size (bitstring length)
    #[arg(long)]
    n: Option<usize>,
    /// Gap width (jump) or trim width (trimmed-onemax)
    #[arg(long)]
    k: Option<usize>,
    /// Power-law exponent in (1, 2)
    #[arg(long)]
    beta: Option<f64>,
    /// Stagnation parameter exponent: R = n^r_exponent
    #[arg(long = "r-exponent")]
    r_exponent: Option<f64>,
    /// Graph file for the mst benchmark
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Number of independent runs
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run i draws from stream i of this seed
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation budget per run (benchmark-scaled default when omitted)
    #[arg(long)]
    budget: Option<u64>,
    /// Record a JSONL trace per run (flex-ea only)
    #[arg(long)]
    trace: bool,
    /// Output path for per-run records (CSV)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
}

impl ExperimentArgs {
    fn into_config(self) -> Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => {
                let algo = self
                    .algo
                    .as_deref()
                    .ok_or_else(|| HarnessError::Config("need --algo or --config".into()))?;
                let problem = self
                    .problem
                    .as_deref()
                    .ok_or_else(|| HarnessError::Config("need --problem or --config".into()))?;
                ExperimentConfig::new(
                    AlgorithmSpec::named(AlgorithmName::parse(algo)?),
                    BenchmarkSpec::named(BenchmarkName::parse(problem)?),
                )
            }
        };
        if self.config.is_some() {
            if let Some(algo) = &self.algo {
                config.algorithm.name = AlgorithmName::parse(algo)?;
            }
            if let Some(problem) = &self.problem {
                config.benchmark.name = BenchmarkName::parse(problem)?;
            }
        }
        if let Some(n) = self.n {
            config.benchmark.n = Some(n);
        }
        if let Some(k) = self.k {
            config.benchmark.k = Some(k);
        }
        if let Some(graph) = self.graph {
            config.benchmark.graph = Some(graph);
        }
        if let Some(beta) = self.beta {
            config.algorithm.beta = beta;
        }
        if let Some(r_exponent) = self.r_exponent {
            config.algorithm.r_exponent = r_exponent;
        }
        if let Some(runs) = self.runs {
            config.runs = runs;
        }
        if let Some(seed) = self.seed {
            config.base_seed = seed;
        }
        if let Some(budget) = self.budget {
            config.budget = Some(budget);
        }
        if self.trace {
            config.trace = true;
        }
        if let Some(out) = self.out {
            config.out = Some(out);
        }
        if let Some(jobs) = self.jobs {
            config.jobs = Some(jobs);
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and summarize it
    Run(ExperimentArgs),
    /// Run the experiment once per value of a parameter
    Sweep {
        #[command(flatten)]
        args: ExperimentArgs,
        /// Parameter to vary: n, k, beta, r-exponent, budget
        #[arg(long)]
        param: String,
        /// Comma-separated values
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
    },
    /// Run several algorithms on the same benchmark with paired seeds
    Compare {
        #[command(flatten)]
        args: ExperimentArgs,
        /// Comma-separated algorithm names (overrides --algo)
        #[arg(long, value_delimiter = ',')]
        algos: Vec<String>,
        /// Additional config files, one per extra algorithm
        #[arg(long, value_delimiter = ',')]
        configs: Vec<PathBuf>,
    },
    /// Run the property suites (distribution, schemes, engine bookkeeping)
    Validate,
    /// Project a sweep/compare summary CSV to plot-ready columns
    PlotData {
        /// Summary CSV produced by sweep or compare
        #[arg(long)]
        records: PathBuf,
        /// Output CSV: x, mean, ci_low, ci_high, algorithm, benchmark
        #[arg(long)]
        out: PathBuf,
    },
}

fn print_summary(prefix: &str, stats: &flexea_harness::SummaryStats) {
    match stats.mean {
        Some(mean) => println!(
            "{prefix}: runs={} success_rate={:.3} mean={:.1} median={:.1} sd={:.1} min={} max={} ci95=[{:.1}, {:.1}]",
            stats.runs,
            stats.success_rate,
            mean,
            stats.median.unwrap(),
            stats.sd.unwrap(),
            stats.min.unwrap(),
            stats.max.unwrap(),
            stats.ci_low.unwrap(),
            stats.ci_high.unwrap(),
        ),
        None => println!("{prefix}: runs={} success_rate=0.000", stats.runs),
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => {
            let config = args.into_config()?;
            let outcome = run_experiment(&config)?;
            print_summary(
                &format!(
                    "{} on {}",
                    config.algorithm.name.as_str(),
                    config.benchmark.name.as_str()
                ),
                &outcome.stats,
            );
            if let Some(out) = &config.out {
                println!("records: {}", out.display());
            }
            Ok(())
        }
        Command::Sweep { args, param, values } => {
            let config = args.into_config()?;
            let param = SweepParam::parse(&param)?;
            let out = config
                .out
                .clone()
                .ok_or_else(|| HarnessError::Config("sweep needs --out for its table".into()))?;
            let rows = sweep_to_file(&config, param, &values, &out)?;
            for row in &rows {
                println!(
                    "{}={}: success_rate={:.3} mean={:?}",
                    row.param, row.value, row.success_rate, row.mean
                );
            }
            println!("summary table: {}", out.display());
            Ok(())
        }
        Command::Compare { args, algos, configs } => {
            let base = args.into_config()?;
            let mut list: Vec<ExperimentConfig> = Vec::new();
            if !algos.is_empty() {
                for name in &algos {
                    let mut config = base.clone();
                    config.algorithm = AlgorithmSpec::named(AlgorithmName::parse(name)?);
                    list.push(config);
                }
            } else {
                list.push(base.clone());
            }
            for path in &configs {
                let mut config = ExperimentConfig::load(path)?;
                // Paired comparison: the shared execution parameters come
                // from the base invocation.
                config.runs = base.runs;
                config.base_seed = base.base_seed;
                config.budget = base.budget.or(config.budget);
                config.jobs = base.jobs;
                list.push(config);
            }
            if list.len() < 2 {
                return Err(HarnessError::Config(
                    "compare needs at least two algorithms (--algos or --configs)".into(),
                ));
            }
            let rows = compare(&list)?;
            for row in &rows {
                println!(
                    "{}: success_rate={:.3} mean={:?} ci95=[{:?}, {:?}]",
                    row.algorithm, row.success_rate, row.mean, row.ci_low, row.ci_high
                );
            }
            if let Some(out) = &base.out {
                write_summary_rows(out, &rows)?;
                println!("summary table: {}", out.display());
            }
            Ok(())
        }
        Command::Validate => flexea_harness::validate::run_all().map(|_| ()),
        Command::PlotData { records, out } => {
            let rows = flexea_harness::records::emit_plot_data(&records, &out)?;
            println!("wrote {rows} plot rows to {}", out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
