//! Batch execution of independent trials.
//!
//! Experiments run many independent seeded trials; the work is
//! embarrassingly parallel. With the `parallel` feature (default) batches run
//! on rayon; without it the same API runs sequentially. Results always come
//! back in index order, and each job derives all of its randomness from its
//! own index, so the output is identical no matter how the work is batched
//! or scheduled.

/// Runs `count` independent jobs and returns their results in index order.
///
/// `jobs` limits the worker threads (`None` uses the global pool). Passing
/// `Some(1)` forces sequential execution even with the `parallel` feature.
pub fn run_indexed<T, F>(count: usize, jobs: Option<usize>, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match jobs {
            Some(1) => run_indexed_serial(count, job),
            Some(threads) => rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("thread pool construction")
                .install(|| (0..count).into_par_iter().map(&job).collect()),
            None => (0..count).into_par_iter().map(&job).collect(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        run_indexed_serial(count, job)
    }
}

/// Sequential reference with the same contract as [`run_indexed`].
pub fn run_indexed_serial<T, F>(count: usize, job: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(job).collect()
}
