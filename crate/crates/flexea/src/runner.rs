//! Driving an algorithm until its termination criterion is met.

use crate::engine::{FlexEa, TraceStep};
use crate::error::{Error, Result};
use crate::fitness::FitnessFunction;
use crate::rng::RandomSource;

/// When a run stops: on evaluating an optimum, on exhausting an evaluation
/// budget, or whichever comes first. At least one condition must be active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TerminationCriterion {
    pub max_evaluations: Option<u64>,
    pub stop_at_optimum: bool,
}

impl TerminationCriterion {
    pub fn new(max_evaluations: Option<u64>, stop_at_optimum: bool) -> Result<Self> {
        if max_evaluations.is_none() && !stop_at_optimum {
            return Err(Error::InvalidConfiguration(
                "termination needs a budget, an optimum stop, or both".into(),
            ));
        }
        if max_evaluations == Some(0) {
            return Err(Error::InvalidConfiguration(
                "evaluation budget must be positive".into(),
            ));
        }
        Ok(Self {
            max_evaluations,
            stop_at_optimum,
        })
    }

    /// Stop at the optimum or after `budget` evaluations, whichever first.
    pub fn budgeted(budget: u64) -> Self {
        Self::new(Some(budget), true).expect("budget is positive")
    }

    /// Stop only at the optimum.
    pub fn at_optimum() -> Self {
        Self::new(None, true).expect("optimum stop is active")
    }
}

/// Result of one run. `evaluations` counts every fitness evaluation,
/// including the one spent on the initial solution.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub evaluations: u64,
    pub success: bool,
    pub final_fitness: f64,
    pub trace: Option<Vec<TraceStep>>,
}

/// A single-trajectory search heuristic: holds one current solution and
/// performs exactly one fitness evaluation per step.
pub trait Algorithm {
    fn current(&self) -> &crate::bits::BitString;
    fn current_fitness(&self) -> f64;
    fn step(&mut self, fitness: &dyn FitnessFunction, rng: &mut RandomSource);
}

impl Algorithm for FlexEa {
    fn current(&self) -> &crate::bits::BitString {
        FlexEa::current(self)
    }

    fn current_fitness(&self) -> f64 {
        FlexEa::current_fitness(self)
    }

    fn step(&mut self, fitness: &dyn FitnessFunction, rng: &mut RandomSource) {
        let _ = FlexEa::step(self, fitness, rng);
    }
}

/// Runs `algo` (already initialized, with its initial solution evaluated)
/// until `termination` is met.
pub fn run(
    algo: &mut dyn Algorithm,
    fitness: &dyn FitnessFunction,
    termination: TerminationCriterion,
    rng: &mut RandomSource,
) -> RunRecord {
    let mut evaluations: u64 = 1;
    let mut success = termination.stop_at_optimum && fitness.is_optimum(algo.current());
    while !success && Some(evaluations) != termination.max_evaluations {
        algo.step(fitness, rng);
        evaluations += 1;
        if termination.stop_at_optimum && fitness.is_optimum(algo.current()) {
            success = true;
        }
    }
    RunRecord {
        evaluations,
        success,
        final_fitness: algo.current_fitness(),
        trace: None,
    }
}

/// Like [`run`] for the archive engine, recording one trace line per step.
pub fn run_traced(
    algo: &mut FlexEa,
    fitness: &dyn FitnessFunction,
    termination: TerminationCriterion,
    rng: &mut RandomSource,
) -> RunRecord {
    let mut evaluations: u64 = 1;
    let mut success = termination.stop_at_optimum && fitness.is_optimum(algo.current());
    let mut trace = Vec::new();
    while !success && Some(evaluations) != termination.max_evaluations {
        let (_, step) = algo.step_traced(fitness, rng);
        trace.push(step);
        evaluations += 1;
        if termination.stop_at_optimum && fitness.is_optimum(algo.current()) {
            success = true;
        }
    }
    RunRecord {
        evaluations,
        success,
        final_fitness: algo.current_fitness(),
        trace: Some(trace),
    }
}
