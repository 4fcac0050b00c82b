//! Execution-mode plumbing: data-parallel maps with a sequential fallback.
//!
//! The `parallel` cargo feature gates the rayon dependency. With the feature
//! off, [`ExecMode::Parallel`] silently degrades to sequential execution so
//! callers never need their own cfg branches. Thread count comes from the
//! `KG_SYMM_THREADS` environment variable: unset or `0` means the library
//! default, `N >= 1` means a dedicated pool of that size, anything else is
//! rejected.

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl ExecMode {
    /// The mode that will actually run, given the compiled feature set.
    pub fn effective(self) -> ExecMode {
        #[cfg(feature = "parallel")]
        {
            self
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = self;
            ExecMode::Sequential
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParError {
    #[error("invalid thread count `{0}`: expected a nonnegative integer")]
    BadThreadCount(String),
}

/// Parse a thread-count override. `None` or `"0"` selects the default pool.
pub fn parse_thread_count(raw: Option<&str>) -> Result<Option<usize>, ParError> {
    match raw {
        None => Ok(None),
        Some(s) => {
            let t = s.trim();
            match t.parse::<usize>() {
                Ok(0) => Ok(None),
                Ok(n) => Ok(Some(n)),
                Err(_) => Err(ParError::BadThreadCount(s.to_string())),
            }
        }
    }
}

/// Read `KG_SYMM_THREADS` from the environment.
pub fn threads_from_env() -> Result<Option<usize>, ParError> {
    match std::env::var("KG_SYMM_THREADS") {
        Ok(v) => parse_thread_count(Some(&v)),
        Err(_) => Ok(None),
    }
}

/// Run `job` inside a dedicated pool of `threads` workers, or directly when
/// no override is given (or the parallel feature is compiled out).
pub fn with_pool<T, F>(threads: Option<usize>, job: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    #[cfg(feature = "parallel")]
    {
        if let Some(n) = threads {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool construction");
            return pool.install(job);
        }
    }
    let _ = threads;
    job()
}

/// Map over owned items, in parallel when the mode and feature allow.
pub fn map_collect<I, T, F>(mode: ExecMode, items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            unreachable!("effective() folds Parallel away without the feature")
        }
    }
}

/// Visit equal-size chunks of a buffer with their chunk index. The grid code
/// uses this to fill field rows.
pub fn for_each_chunk_mut<T, F>(mode: ExecMode, data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    assert!(chunk > 0, "chunk size must be positive");
    match mode.effective() {
        ExecMode::Sequential => {
            for (i, c) in data.chunks_mut(chunk).enumerate() {
                f(i, c);
            }
        }
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                data.par_chunks_mut(chunk)
                    .enumerate()
                    .for_each(|(i, c)| f(i, c));
            }
            #[cfg(not(feature = "parallel"))]
            unreachable!("effective() folds Parallel away without the feature")
        }
    }
}
