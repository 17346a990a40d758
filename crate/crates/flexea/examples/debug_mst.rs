//! Scratch: inspect slow spanning-tree runs under gray-box parameters.

use std::sync::Arc;

use flexea::benchmarks::{MstFitness, WeightedGraph};
use flexea::engine::{ArchiveEvent, FlexEa};
use flexea::rng::RandomSource;
use flexea::schedule::RateSchedule;
use flexea::FitnessFunction;

fn main() {
    for (w_max_factor, seed) in [
        (2.0f64, 18u64),
        (2.0, 19),
        (0.25, 18),
        (0.25, 19),
        (0.25, 20),
        (0.5, 18),
    ] {
        let t3 = 1.0f64;
        let mut failures = 0;
        let mut worst = 0u64;
        let mut ratios = Vec::new();
        for i in 0..100u64 {
            let mut rng = RandomSource::split(seed, i);
            let m_edges = 20 + (i as usize % 21);
            let n_v = (2 * m_edges).div_ceil(3).max(4);
            let w_max = ((m_edges as f64 * w_max_factor).round() as u64).max(2);
            let g =
                WeightedGraph::random_connected(n_v, m_edges, w_max, &mut rng).unwrap();
            let f = MstFitness::new(g).unwrap();
            let m = m_edges as f64;
            let mut lambda = vec![1e-9; m_edges];
            lambda[0] = 0.25;
            lambda[1] = 1.0 / (m * m);
            let mut bounds = vec![t3; m_edges];
            bounds[0] = m * (m.powi(6)).ln();
            bounds[1] = m * m * (m.powi(6)).ln();
            let schedule = Arc::new(RateSchedule::new(lambda, bounds).unwrap());
            let budget = (20.0 * m * m * m.ln()).ceil() as u64;
            let mut algo = FlexEa::new(schedule, &f, &mut rng).unwrap();
            let mut evals = 1u64;
            let mut tree_at = None;
            let mut resets = 0;
            let mut successions = 0;
            let mut rate2_expiries = 0;
            while evals < budget && !f.is_optimum(algo.current()) {
                let out = algo.step(&f, &mut rng);
                evals += 1;
                if tree_at.is_none() && f.is_spanning_tree(algo.current()) {
                    tree_at = Some(evals);
                }
                for e in &out.archive_events {
                    match e {
                        ArchiveEvent::GlobalReset => resets += 1,
                        ArchiveEvent::SuccessionTo(_) => successions += 1,
                        ArchiveEvent::RateExpired(2) => rate2_expiries += 1,
                        _ => {}
                    }
                }
            }
            let ok = f.is_optimum(algo.current());
            worst = worst.max(evals);
            let ranks_sum: usize = f.graph().edge_ranks().iter().sum();
            let bound = (m * m / 2.0) * (1.0 + (ranks_sum as f64).ln());
            ratios.push(evals as f64 / bound);
            if !ok {
                failures += 1;
                println!(
                    "w={w_max_factor} seed={seed} run {i}: m={m_edges} budget={budget} tree_at={tree_at:?} resets={resets} succ={successions} r2exp={rate2_expiries} archive={:?} fit={} opt_w={}",
                    algo.archive(),
                    algo.current_fitness(),
                    f.optimal_weight()
                );
            }
        }
        let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
        println!("w_max={w_max_factor}m seed={seed} t3={t3}: failures={failures} worst={worst} mean_ratio={mean_ratio:.3}");
    }
}
