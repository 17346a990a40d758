//! Scratch pilot runs for calibrating test bands.

use std::sync::Arc;

use flexea::baselines::{FastEa, OnePlusOneEa, Rls12, SdRls};
use flexea::benchmarks::{GeneralizedHurdles, LevelPattern, OneMax, WeightedGraph, MstFitness};
use flexea::engine::FlexEa;
use flexea::rng::RandomSource;
use flexea::runner::{run, TerminationCriterion};
use flexea::schedule::RateSchedule;
use flexea::trials;
use flexea::FitnessFunction;

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn main() {
    let t0 = std::time::Instant::now();

    // (1+1) EA on OneMax n=64
    {
        let n = 64;
        let f = OneMax::new(n).unwrap();
        let budget = (1000.0 * n as f64 * (n as f64).ln()).ceil() as u64;
        let evals: Vec<f64> = trials::run_indexed(200, None, |i| {
            let mut rng = RandomSource::split(14, i as u64);
            let mut algo = OnePlusOneEa::new(&f, &mut rng).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(budget), &mut rng);
            assert!(rec.success);
            rec.evaluations as f64
        });
        let m = mean(&evals);
        println!("opo-ea onemax n=64: mean={m:.1} mean/(n ln n)={:.3}", m / (64.0 * 64f64.ln()));
    }

    // Fast EA vs flex on OneMax n=64
    {
        let n = 64;
        let f = OneMax::new(n).unwrap();
        let budget = (2000.0 * n as f64 * (n as f64).ln()).ceil() as u64;
        let fast: Vec<f64> = trials::run_indexed(200, None, |i| {
            let mut rng = RandomSource::split(15, i as u64);
            let mut algo = FastEa::new(1.5, &f, &mut rng).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(budget), &mut rng);
            assert!(rec.success);
            rec.evaluations as f64
        });
        let schedule = Arc::new(RateSchedule::recommended(n, 1.5, (n as f64).powi(4)).unwrap());
        let flex: Vec<f64> = trials::run_indexed(200, None, |i| {
            let mut rng = RandomSource::split(15, i as u64);
            let mut algo = FlexEa::new(schedule.clone(), &f, &mut rng).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(budget), &mut rng);
            assert!(rec.success);
            rec.evaluations as f64
        });
        println!(
            "fast-ea onemax n=64: mean={:.1}; flex mean={:.1}; ratio={:.2}",
            mean(&fast),
            mean(&flex),
            mean(&fast) / mean(&flex)
        );
    }

    // Hurdles: flex vs SD-RLS (n=64, s=40, g=2, top=48)
    {
        let n = 64;
        let f = GeneralizedHurdles::new(n, 40, 2, 48, LevelPattern::AlternatingTwoOne).unwrap();
        let budget = 200 * (n as u64).pow(3);
        let schedule = Arc::new(RateSchedule::recommended(n, 1.5, (n as f64).powi(4)).unwrap());
        let flex: Vec<(f64, bool)> = trials::run_indexed(100, None, |i| {
            let mut rng = RandomSource::split(16, i as u64);
            let mut algo = FlexEa::new(schedule.clone(), &f, &mut rng).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(budget), &mut rng);
            (rec.evaluations as f64, rec.success)
        });
        let fe: Vec<f64> = flex.iter().map(|x| x.0).collect();
        let fs = flex.iter().filter(|x| x.1).count();
        println!("hurdles flex: mean={:.1} successes={fs}/100", mean(&fe));
        let sd: Vec<(f64, bool)> = trials::run_indexed(100, None, |i| {
            let mut rng = RandomSource::split(16, i as u64);
            let mut algo = SdRls::new((n as f64).powi(4), &f, &mut rng).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(budget), &mut rng);
            (rec.evaluations as f64, rec.success)
        });
        let se: Vec<f64> = sd.iter().map(|x| x.0).collect();
        let ss = sd.iter().filter(|x| x.1).count();
        println!("hurdles sd-rls: mean={:.1} successes={ss}/100", mean(&se));
    }

    // RLS12 from one-away start
    {
        let n = 64;
        let f = OneMax::new(n).unwrap();
        let evals: Vec<f64> = trials::run_indexed(500, None, |i| {
            let mut rng = RandomSource::split(17, i as u64);
            let mut x = flexea::BitString::ones(n).unwrap();
            x.set(rng.int_in(0, n - 1), false);
            let mut algo = Rls12::with_initial(x, &f).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(100_000), &mut rng);
            assert!(rec.success);
            rec.evaluations as f64
        });
        println!("rls12 one-away n=64: mean={:.1} (2n = {})", mean(&evals), 2 * n);
    }

    // MST with gray-box parameters
    {
        let mut ratios = Vec::new();
        let mut all_optimal = true;
        let mut failures = 0;
        for i in 0..100u64 {
            let mut rng = RandomSource::split(18, i);
            let m_edges = 20 + (i as usize % 21);
            let n_v = (2 * m_edges).div_ceil(3).max(4);
            let g = WeightedGraph::random_connected(n_v, m_edges, 2 * m_edges as u64, &mut rng).unwrap();
            let ranks_sum: usize = g.edge_ranks().iter().sum();
            let f = MstFitness::new(g).unwrap();
            let m = m_edges as f64;
            let mut lambda = vec![1e-9; m_edges];
            lambda[0] = 0.25;
            lambda[1] = 1.0 / (m * m);
            let mut bounds = vec![1.0; m_edges];
            bounds[0] = m * (m.powi(6)).ln();
            bounds[1] = m * m * (m.powi(6)).ln();
            let schedule = Arc::new(RateSchedule::new(lambda, bounds).unwrap());
            let budget = (20.0 * m * m * m.ln()).ceil() as u64;
            let mut algo = FlexEa::new(schedule, &f, &mut rng).unwrap();
            let rec = run(&mut algo, &f, TerminationCriterion::budgeted(budget), &mut rng);
            if !rec.success {
                failures += 1;
                all_optimal = false;
                continue;
            }
            let bound = (m * m / 2.0) * (1.0 + (ranks_sum as f64).ln());
            ratios.push(rec.evaluations as f64 / bound);
        }
        println!(
            "mst gray-box: mean ratio to (m^2/2)(1+ln sum r)={:.3} all_optimal={all_optimal} failures={failures}",
            mean(&ratios)
        );
    }

    println!("total elapsed {:?}", t0.elapsed());
}
