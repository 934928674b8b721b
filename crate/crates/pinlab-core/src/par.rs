//! Thin data-parallel helpers with a sequential fallback.
//!
//! All hot loops in this crate fan out through these functions. With the
//! `parallel` feature (default) they run on the rayon pool; without it they
//! degrade to plain iteration. Outputs preserve input order in both modes,
//! so reductions that depend on order (tie-breaking, float accumulation)
//! stay deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Map `f` over an index range `0..n`, preserving order.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
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

/// True when this build fans work out on rayon.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
