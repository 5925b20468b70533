//! Execution strategy for the enumeration loops.
//!
//! Every exhaustive enumeration in the crate (assignments, edge subsets,
//! rotation systems, search frontiers) goes through [`fold_range`] or
//! [`map_collect`]. With the `parallel` feature these run on the rayon
//! pool when [`Execution::Parallel`] is requested; without it both
//! variants run sequentially. Reductions are associative and commutative
//! (integer histograms, exact polynomial sums), so results do not depend
//! on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
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

/// Below this many items the parallel path is not worth the split.
const PARALLEL_THRESHOLD: u64 = 512;

pub fn fold_range<T, I, F, R>(exec: Execution, len: u64, identity: I, fold: F, reduce: R) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && len >= PARALLEL_THRESHOLD {
        return (0..len)
            .into_par_iter()
            .fold(&identity, &fold)
            .reduce(&identity, &reduce);
    }
    let _ = (&reduce, exec, PARALLEL_THRESHOLD);
    (0..len).fold(identity(), fold)
}

/// Order-preserving map over a slice.
pub fn map_collect<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel && items.len() > 1 {
        return items.par_iter().map(&f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Add two equal-length count vectors in place.
pub(crate) fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}
