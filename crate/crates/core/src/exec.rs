//! Worker-pool abstraction: a rayon pool behind the `parallel` feature
//! with a true sequential fallback. Results are collected in input
//! order, so outputs are identical for any worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub enum Executor {
    Sequential,
    #[cfg(feature = "parallel")]
    Pool(rayon::ThreadPool),
}

impl Executor {
    /// `jobs = 1` selects the sequential path; `jobs = 0` uses all cores.
    #[cfg(feature = "parallel")]
    pub fn new(jobs: usize) -> Self {
        if jobs == 1 {
            return Executor::Sequential;
        }
        let threads = if jobs == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            jobs
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        Executor::Pool(pool)
    }

    #[cfg(not(feature = "parallel"))]
    pub fn new(jobs: usize) -> Self {
        if jobs > 1 {
            log::warn!("built without the parallel feature; running sequentially");
        }
        Executor::Sequential
    }

    pub fn sequential() -> Self {
        Executor::Sequential
    }

    /// Maps `f` over the items, preserving order.
    pub fn map<T, U, F>(&self, items: Vec<T>, f: F) -> Vec<U>
    where
        T: Send,
        U: Send,
        F: Fn(T) -> U + Send + Sync,
    {
        match self {
            Executor::Sequential => items.into_iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Executor::Pool(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
        }
    }

    /// Maps `f` over index range 0..len, preserving order.
    pub fn map_range<U, F>(&self, len: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> U + Send + Sync,
    {
        match self {
            Executor::Sequential => (0..len).map(f).collect(),
            #[cfg(feature = "parallel")]
            Executor::Pool(pool) => pool.install(|| (0..len).into_par_iter().map(f).collect()),
        }
    }
}
