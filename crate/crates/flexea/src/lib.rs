//! An elitist (1+1)-type evolutionary algorithm that maintains a dynamic
//! archive of successful k-bit-flip mutation rates, together with baseline
//! algorithms and a pseudo-Boolean benchmark suite.
//!
//! The engine ([`engine::FlexEa`]) selects its mutation rate each iteration
//! from a frequency vector that concentrates probability mass on an archive
//! of recently successful rates, while user-supplied lower bounds keep every
//! rate reachable. Failure counters expire stale rates, a stagnation-style
//! succession rule advances past exhausted ones, and a global counter resets
//! the archive when nothing works. With heavy-tailed lower bounds and
//! stagnation-detection count bounds (see [`schedule`]), the algorithm is
//! essentially parameter-less.
//!
//! Baselines ([`baselines`]): stagnation-detection RLS, the heavy-tailed
//! (1+1) EA, two-rate RLS, and the classic (1+1) EA. Benchmarks
//! ([`benchmarks`]): OneMax, LeadingOnes, trimmed OneMax, Jump, minimum
//! spanning trees, and hurdle functions with alternating gap widths.
//!
//! Everything stochastic draws from an explicit [`rng::RandomSource`];
//! equal seeds replay runs bit-exactly, and independent trials use
//! non-overlapping streams (see [`trials`]).

pub mod baselines;
pub mod benchmarks;
pub mod bits;
pub mod engine;
pub mod error;
pub mod fitness;
pub mod mutation;
pub mod rng;
pub mod runner;
pub mod sampling;
pub mod schedule;
pub mod trials;

pub use bits::{hamming_distance, random_bitstring, BitString};
pub use engine::FlexEa;
pub use error::{Error, Result};
pub use fitness::{Direction, FitnessFunction};
pub use mutation::flip_k_bits;
pub use rng::RandomSource;
pub use runner::{run, run_traced, Algorithm, RunRecord, TerminationCriterion};
pub use schedule::RateSchedule;
