//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is off.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map every job to a batch of results and concatenate them in job order.
#[cfg(feature = "parallel")]
pub fn flat_map<T, R, F>(jobs: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    jobs.par_iter().flat_map_iter(|j| f(j)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn flat_map<T, R, F>(jobs: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> Vec<R>,
{
    jobs.iter().flat_map(f).collect()
}
