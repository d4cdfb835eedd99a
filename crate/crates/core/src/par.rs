//! Data-parallel helpers. With the `parallel` feature these fan out over
//! rayon's pool; without it, or when [`Execution::Sequential`] is requested,
//! they run as plain iterators. Output order never depends on scheduling.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How bulk graph and verification work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the crate is built without `parallel`.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `range.map(f).collect()`, in index order.
pub(crate) fn map_range<T, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

/// Concatenation of `f` over consecutive chunks of `0..len`, in order.
pub(crate) fn flat_map_chunks<T, F>(exec: Execution, len: u64, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> Vec<T> + Sync + Send,
{
    let chunks = len.div_ceil(chunk) as usize;
    let parts = map_range(exec, 0..chunks, |c| {
        let start = c as u64 * chunk;
        f(start..(start + chunk).min(len))
    });
    parts.into_iter().flatten().collect()
}
