//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the helpers dispatch to rayon. The
//! calling thread can force the sequential path with [`sequential`], which is
//! what the benches use to compare both code paths inside one build. Without
//! the feature every helper is a plain iterator loop.
//!
//! All helpers return results in input order, so outputs do not depend on
//! scheduling.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
thread_local! {
    static FORCE_SEQUENTIAL: std::cell::Cell<bool> = const { std::cell::Cell::new(false) };
}

/// Runs `f` with the parallel path disabled on the current thread.
pub fn sequential<R>(f: impl FnOnce() -> R) -> R {
    #[cfg(feature = "parallel")]
    {
        let prev = FORCE_SEQUENTIAL.with(|c| c.replace(true));
        let out = f();
        FORCE_SEQUENTIAL.with(|c| c.set(prev));
        out
    }
    #[cfg(not(feature = "parallel"))]
    {
        f()
    }
}

pub fn is_parallel() -> bool {
    #[cfg(feature = "parallel")]
    {
        !FORCE_SEQUENTIAL.with(|c| c.get())
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    range.map(f).collect()
}

pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Smallest index in `range` for which `f` returns `Some`, with its value.
pub fn find_first<R, F>(range: Range<usize>, f: F) -> Option<(usize, R)>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if is_parallel() {
        return range.into_par_iter().find_map_first(|i| f(i).map(|r| (i, r)));
    }
    range.into_iter().find_map(|i| f(i).map(|r| (i, r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let par = map_range(0..100, |i| i * i);
        let seq = sequential(|| map_range(0..100, |i| i * i));
        assert_eq!(par, seq);
        let first = find_first(0..1000, |i| (i % 97 == 96).then_some(i));
        assert_eq!(first, Some((96, 96)));
        assert_eq!(sequential(|| find_first(0..1000, |i| (i % 97 == 96).then_some(i))), first);
    }

    #[test]
    fn sequential_flag_is_scoped() {
        let inner = sequential(is_parallel);
        assert!(!inner);
        assert_eq!(is_parallel(), cfg!(feature = "parallel"));
    }
}
