//! Data-parallel helpers. With the `parallel` feature (default) these fan out
//! over rayon; without it they run sequentially. Results are order-stable
//! either way, so outputs are identical across both builds.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items` and flattens, preserving input order.
pub fn flat_map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Vec<U> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(|t| f(t)).flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().flat_map(|t| f(t)).collect()
    }
}

/// Minimum of `f` over the index range, or None when the range is empty.
/// The reduction is associative and commutative, so the parallel split cannot
/// change the result.
pub fn range_min_map<F>(range: std::ops::Range<u64>, f: F) -> Option<u64>
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).min()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).min()
    }
}
