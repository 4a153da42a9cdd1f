//! Data-parallel map with a sequential fallback.
//!
//! Scan grids, oracle sweeps, and density grids are embarrassingly parallel
//! over independent instances. With the default `parallel` feature the work
//! runs on rayon; without it the same call degrades to a plain iterator map.
//! Output order always matches input order, so results are deterministic
//! either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is enabled.
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(&f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential map with the same shape as [`par_map`], kept unconditionally
/// so benchmarks can compare the two paths under one build.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_map_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let out = par_map(&items, |x| x * x);
        let expected = seq_map(&items, |x| x * x);
        assert_eq!(out, expected);
    }
}
