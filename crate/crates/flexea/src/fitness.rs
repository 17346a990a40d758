//! The evaluation interface shared by all algorithms.

use crate::bits::BitString;

/// Optimization direction. Maximization is canonical; minimization problems
/// are handled by inverting comparisons, which preserves strict/equal
/// semantics exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Maximize,
    Minimize,
}

/// A pseudo-Boolean fitness function together with its optimum predicate.
///
/// `evaluate` must be pure and deterministic, and `is_optimum(x)` must imply
/// that `evaluate(x)` equals the known optimal value.
pub trait FitnessFunction: Send + Sync {
    fn name(&self) -> &str;

    /// Bitstring length this function evaluates.
    fn size(&self) -> usize;

    fn evaluate(&self, x: &BitString) -> f64;

    fn is_optimum(&self, x: &BitString) -> bool;

    fn direction(&self) -> Direction {
        Direction::Maximize
    }

    /// Whether `candidate` is strictly better than `incumbent`.
    fn strictly_better(&self, candidate: f64, incumbent: f64) -> bool {
        match self.direction() {
            Direction::Maximize => candidate > incumbent,
            Direction::Minimize => candidate < incumbent,
        }
    }

    /// Whether `candidate` is at least as good as `incumbent`.
    fn not_worse(&self, candidate: f64, incumbent: f64) -> bool {
        self.strictly_better(candidate, incumbent) || candidate == incumbent
    }
}
