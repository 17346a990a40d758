//! Experiment configuration: a single JSON document (see
//! `docs/config-schema.json`) whose values CLI flags may override.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use flexea::benchmarks::{
    GeneralizedHurdles, Jump, LeadingOnes, LevelPattern, MstFitness, OneMax, TrimmedOneMax,
    TwoRates, TwoRatesParams, WeightedGraph,
};
use flexea::fitness::FitnessFunction;
use flexea::schedule::{heavy_tailed_lower_bounds, standard_sd_count_bounds, RateSchedule};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmName {
    FlexEa,
    SdRlsR,
    FastEa,
    Rls12,
    OpoEa,
}

impl AlgorithmName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmName::FlexEa => "flex-ea",
            AlgorithmName::SdRlsR => "sd-rls-r",
            AlgorithmName::FastEa => "fast-ea",
            AlgorithmName::Rls12 => "rls12",
            AlgorithmName::OpoEa => "opo-ea",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "flex-ea" => Ok(AlgorithmName::FlexEa),
            "sd-rls-r" => Ok(AlgorithmName::SdRlsR),
            "fast-ea" => Ok(AlgorithmName::FastEa),
            "rls12" => Ok(AlgorithmName::Rls12),
            "opo-ea" => Ok(AlgorithmName::OpoEa),
            other => Err(HarnessError::Config(format!(
                "unknown algorithm {other:?}; expected one of flex-ea, sd-rls-r, fast-ea, rls12, opo-ea"
            ))),
        }
    }
}

/// Where a parameter vector comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "kebab-case")]
pub enum VectorScheme {
    /// Heavy-tailed floors (lower bounds only).
    HeavyTailed,
    /// Standard stagnation-detection bounds (count bounds only).
    StandardSd,
    /// Plain-text file: one real per line, exactly n lines.
    File { path: PathBuf },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    pub name: AlgorithmName,
    /// Power-law exponent for heavy-tailed floors and the fast EA.
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Resolves to `R = n^r_exponent` unless `r_value` overrides it.
    #[serde(default = "default_r_exponent")]
    pub r_exponent: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_value: Option<f64>,
    #[serde(default = "default_lambda_scheme")]
    pub lambda: VectorScheme,
    #[serde(default = "default_count_scheme")]
    pub count_bounds: VectorScheme,
    /// Overrides each baseline's equal-fitness acceptance convention.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accept_equal: Option<bool>,
}

fn default_beta() -> f64 {
    1.5
}

fn default_r_exponent() -> f64 {
    4.0
}

fn default_lambda_scheme() -> VectorScheme {
    VectorScheme::HeavyTailed
}

fn default_count_scheme() -> VectorScheme {
    VectorScheme::StandardSd
}

impl AlgorithmSpec {
    pub fn named(name: AlgorithmName) -> Self {
        Self {
            name,
            beta: default_beta(),
            r_exponent: default_r_exponent(),
            r_value: None,
            lambda: default_lambda_scheme(),
            count_bounds: default_count_scheme(),
            accept_equal: None,
        }
    }

    /// The stagnation parameter `R` for problem size `n`.
    pub fn resolve_r(&self, n: usize) -> f64 {
        self.r_value
            .unwrap_or_else(|| (n as f64).powf(self.r_exponent))
    }

    /// Builds the engine's rate schedule for problem size `n`.
    pub fn build_schedule(&self, n: usize) -> Result<Arc<RateSchedule>> {
        let lambda = match &self.lambda {
            VectorScheme::HeavyTailed => heavy_tailed_lower_bounds(n, self.beta)?,
            VectorScheme::File { path } => RateSchedule::load_vector(path, n)?,
            VectorScheme::StandardSd => {
                return Err(HarnessError::Config(
                    "standard-sd is a count-bound scheme, not a lower-bound scheme".into(),
                ))
            }
        };
        let bounds = match &self.count_bounds {
            VectorScheme::StandardSd => standard_sd_count_bounds(n, self.resolve_r(n))?,
            VectorScheme::File { path } => RateSchedule::load_vector(path, n)?,
            VectorScheme::HeavyTailed => {
                return Err(HarnessError::Config(
                    "heavy-tailed is a lower-bound scheme, not a count-bound scheme".into(),
                ))
            }
        };
        Ok(Arc::new(RateSchedule::new(lambda, bounds)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchmarkName {
    Onemax,
    Leadingones,
    TrimmedOnemax,
    Jump,
    Mst,
    TwoRates,
    Hurdles,
}

impl BenchmarkName {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenchmarkName::Onemax => "onemax",
            BenchmarkName::Leadingones => "leadingones",
            BenchmarkName::TrimmedOnemax => "trimmed-onemax",
            BenchmarkName::Jump => "jump",
            BenchmarkName::Mst => "mst",
            BenchmarkName::TwoRates => "two-rates",
            BenchmarkName::Hurdles => "hurdles",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "onemax" => Ok(BenchmarkName::Onemax),
            "leadingones" => Ok(BenchmarkName::Leadingones),
            "trimmed-onemax" => Ok(BenchmarkName::TrimmedOnemax),
            "jump" => Ok(BenchmarkName::Jump),
            "mst" => Ok(BenchmarkName::Mst),
            "two-rates" => Ok(BenchmarkName::TwoRates),
            "hurdles" => Ok(BenchmarkName::Hurdles),
            other => Err(HarnessError::Config(format!(
                "unknown benchmark {other:?}; expected one of onemax, leadingones, \
                 trimmed-onemax, jump, mst, two-rates, hurdles"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkSpec {
    pub name: BenchmarkName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Gap width for `jump`, trim width for `trimmed-onemax`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Graph file for `mst`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,
    /// Hurdle geometry for `hurdles`: region start, grid spacing, region end.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<usize>,
    /// Feasibility pattern for `hurdles`: "two-one" (default) or "all".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
}

impl BenchmarkSpec {
    pub fn named(name: BenchmarkName) -> Self {
        Self {
            name,
            n: None,
            k: None,
            graph: None,
            s: None,
            g: None,
            top: None,
            pattern: None,
        }
    }

    fn require_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| HarnessError::Config(format!("{} needs n", self.name.as_str())))
    }

    fn pattern(&self) -> Result<LevelPattern> {
        match self.pattern.as_deref() {
            None | Some("two-one") => Ok(LevelPattern::AlternatingTwoOne),
            Some("all") => Ok(LevelPattern::AlwaysFeasible),
            Some(other) => Err(HarnessError::Config(format!(
                "unknown hurdle pattern {other:?}; expected \"two-one\" or \"all\""
            ))),
        }
    }

    /// Instantiates the fitness function.
    pub fn build(&self) -> Result<Box<dyn FitnessFunction>> {
        Ok(match self.name {
            BenchmarkName::Onemax => Box::new(OneMax::new(self.require_n()?)?),
            BenchmarkName::Leadingones => Box::new(LeadingOnes::new(self.require_n()?)?),
            BenchmarkName::TrimmedOnemax => {
                Box::new(TrimmedOneMax::new(self.require_n()?, self.k.unwrap_or(0))?)
            }
            BenchmarkName::Jump => {
                let k = self.k.ok_or_else(|| {
                    HarnessError::Config("jump needs a gap width k".into())
                })?;
                Box::new(Jump::new(self.require_n()?, k)?)
            }
            BenchmarkName::Mst => {
                let path = self.graph.as_deref().ok_or_else(|| {
                    HarnessError::Config("mst needs a graph file".into())
                })?;
                Box::new(MstFitness::new(WeightedGraph::load(path)?)?)
            }
            BenchmarkName::TwoRates => {
                Box::new(TwoRates::new(TwoRatesParams::new(self.require_n()?)?))
            }
            BenchmarkName::Hurdles => {
                let n = self.require_n()?;
                let s = self
                    .s
                    .ok_or_else(|| HarnessError::Config("hurdles needs s".into()))?;
                let g = self
                    .g
                    .ok_or_else(|| HarnessError::Config("hurdles needs g".into()))?;
                let top = self.top.unwrap_or(3 * n / 4);
                Box::new(GeneralizedHurdles::new(n, s, g, top, self.pattern()?)?)
            }
        })
    }

    /// Default evaluation budget, scaled to keep the success rate near one:
    /// `1000 n ln n` for the unimodal functions, `100 C(n,k)` for jump,
    /// `100 m^2 ln m` for spanning trees, and `200 n^3` for the hurdle
    /// functions.
    pub fn default_budget(&self, size: usize) -> u64 {
        let n = size as f64;
        let b = match self.name {
            BenchmarkName::Onemax | BenchmarkName::Leadingones | BenchmarkName::TrimmedOnemax => {
                1_000.0 * n * n.max(2.0).ln()
            }
            BenchmarkName::Jump => {
                100.0 * flexea::schedule::binomial(size, self.k.unwrap_or(1))
            }
            BenchmarkName::Mst => 100.0 * n * n * n.max(2.0).ln(),
            BenchmarkName::TwoRates | BenchmarkName::Hurdles => 200.0 * n * n * n,
        };
        b.min(u64::MAX as f64 / 2.0).ceil() as u64
    }
}

/// A full experiment: algorithm, benchmark, and execution parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithm: AlgorithmSpec,
    pub benchmark: BenchmarkSpec,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub base_seed: u64,
    /// Evaluation cap per run; derived from the benchmark when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default)]
    pub trace: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Worker threads for independent runs; all cores when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

fn default_runs() -> usize {
    100
}

impl ExperimentConfig {
    pub fn new(algorithm: AlgorithmSpec, benchmark: BenchmarkSpec) -> Self {
        Self {
            algorithm,
            benchmark,
            runs: default_runs(),
            base_seed: 0,
            budget: None,
            trace: false,
            out: None,
            jobs: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        let config: ExperimentConfig = serde_json::from_str(&text)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    /// Rejects impossible configurations before any run starts.
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(HarnessError::Config("runs must be at least 1".into()));
        }
        if self.budget == Some(0) {
            return Err(HarnessError::Config("budget must be at least 1".into()));
        }
        if self.jobs == Some(0) {
            return Err(HarnessError::Config("jobs must be at least 1".into()));
        }
        if !(self.algorithm.beta > 1.0 && self.algorithm.beta < 2.0) {
            return Err(HarnessError::Config(format!(
                "beta = {} outside (1, 2)",
                self.algorithm.beta
            )));
        }
        // Building the fitness validates benchmark parameters and files.
        let fitness = self.benchmark.build()?;
        if self.algorithm.name == AlgorithmName::FlexEa {
            self.algorithm.build_schedule(fitness.size())?;
        }
        if self.algorithm.name == AlgorithmName::SdRlsR && !(self.resolve_r(fitness.size()) > 1.0)
        {
            return Err(HarnessError::Config(
                "stagnation parameter R must exceed 1".into(),
            ));
        }
        Ok(())
    }

    pub fn resolve_r(&self, n: usize) -> f64 {
        self.algorithm.resolve_r(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let json = r#"{
            "algorithm": {"name": "flex-ea"},
            "benchmark": {"name": "onemax", "n": 32}
        }"#;
        let config: ExperimentConfig = serde_json::from_str(json).unwrap();
        config.validate().unwrap();
        assert_eq!(config.algorithm.beta, 1.5);
        assert_eq!(config.algorithm.r_exponent, 4.0);
        assert_eq!(config.runs, 100);
        assert_eq!(config.resolve_r(32), 32f64.powi(4));
    }

    #[test]
    fn rejects_unknown_fields_and_names() {
        let json = r#"{
            "algorithm": {"name": "flex-ea", "typo": 3},
            "benchmark": {"name": "onemax", "n": 32}
        }"#;
        assert!(serde_json::from_str::<ExperimentConfig>(json).is_err());
        assert!(AlgorithmName::parse("annealing").is_err());
        assert!(BenchmarkName::parse("sphere").is_err());
    }

    #[test]
    fn jump_requires_k() {
        let config = ExperimentConfig::new(
            AlgorithmSpec::named(AlgorithmName::FlexEa),
            BenchmarkSpec {
                n: Some(20),
                ..BenchmarkSpec::named(BenchmarkName::Jump)
            },
        );
        assert!(config.validate().is_err());
    }

    #[test]
    fn default_budgets_scale_with_problem() {
        let onemax = BenchmarkSpec {
            n: Some(64),
            ..BenchmarkSpec::named(BenchmarkName::Onemax)
        };
        assert_eq!(
            onemax.default_budget(64),
            (1000.0 * 64.0 * 64f64.ln()).ceil() as u64
        );
        let jump = BenchmarkSpec {
            n: Some(20),
            k: Some(2),
            ..BenchmarkSpec::named(BenchmarkName::Jump)
        };
        assert_eq!(jump.default_budget(20), 19_000);
    }

    #[test]
    fn custom_vector_files_feed_the_schedule() {
        let dir = tempfile::tempdir().unwrap();
        let lambda_path = dir.path().join("lambda.txt");
        let bounds_path = dir.path().join("bounds.txt");
        std::fs::write(&lambda_path, "0.25\n0.25\n0.25\n").unwrap();
        std::fs::write(&bounds_path, "5\n6\n7\n").unwrap();
        let spec = AlgorithmSpec {
            lambda: VectorScheme::File { path: lambda_path },
            count_bounds: VectorScheme::File { path: bounds_path },
            ..AlgorithmSpec::named(AlgorithmName::FlexEa)
        };
        let schedule = spec.build_schedule(3).unwrap();
        assert_eq!(schedule.lambda(1), 0.25);
        assert_eq!(schedule.count_bound(3), 7.0);
    }
}
