//! Independent parameter points, evaluated sequentially or on a rayon pool.
//!
//! Results always come back in input order, so downstream output does not
//! depend on scheduling. Without the `parallel` feature every mode runs
//! sequentially.

/// How a batch of independent runs is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    /// Global rayon pool.
    #[default]
    Parallel,
    /// Dedicated pool with a fixed number of worker threads.
    Jobs(usize),
}

impl ExecMode {
    /// `--jobs N` semantics: 1 means sequential, 0 means "all cores".
    pub fn from_jobs(jobs: usize) -> Self {
        match jobs {
            0 => ExecMode::Parallel,
            1 => ExecMode::Sequential,
            n => ExecMode::Jobs(n),
        }
    }
}

/// Map `f` over `points`, preserving order.
pub fn map<T, R, F>(points: &[T], mode: ExecMode, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => points.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            points.par_iter().map(f).collect()
        }
        #[cfg(feature = "parallel")]
        ExecMode::Jobs(n) => {
            use rayon::prelude::*;
            match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(|| points.par_iter().map(&f).collect()),
                Err(e) => {
                    log::warn!("could not build a {n}-thread pool ({e}); running sequentially");
                    points.iter().map(f).collect()
                }
            }
        }
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel | ExecMode::Jobs(_) => points.iter().map(f).collect(),
    }
}

/// Like [`map`] for fallible work; returns the first error in input order.
pub fn try_map<T, R, E, F>(points: &[T], mode: ExecMode, f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(points, mode, f).into_iter().collect()
}
