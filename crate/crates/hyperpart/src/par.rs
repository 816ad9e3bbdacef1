//! Thin wrappers that switch between rayon and sequential execution.
//!
//! Every parallel construct used by this crate goes through one of these
//! helpers, and each helper is schedule-independent: indexed maps write to
//! disjoint slots, sums are commutative-associative integer reductions, and
//! sorts use total orders. The `parallel` feature therefore changes wall-clock
//! time but never the result.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sum `f(i)` over `0..n`. u64 addition is commutative and associative, so
/// any reduction tree yields the same value.
pub(crate) fn sum_indexed<F>(n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).sum()
    }
}

/// Unstable sort. Callers must supply keys forming a total order with no
/// distinct-but-equal elements (ids are always part of the key), which makes
/// the sorted output unique regardless of the sort's internal schedule.
pub(crate) fn sort_unstable<T: Ord + Send>(v: &mut [T]) {
    #[cfg(feature = "parallel")]
    {
        v.par_sort_unstable();
    }
    #[cfg(not(feature = "parallel"))]
    {
        v.sort_unstable();
    }
}
