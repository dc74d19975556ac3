//! Execution configuration: resource limits and the data-parallel map used
//! for independent batch work (membership tests per degree class, oracle
//! bidegrees, corpus instances, randomized trials).

use std::time::Duration;

/// Resource limits for a single Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// S-pairs whose sugar degree exceeds this are skipped and the result is
    /// flagged incomplete.
    pub max_degree: u32,
    pub timeout: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 40, timeout: Duration::from_secs(60) }
    }
}

/// How independent work items are scheduled. `Parallel` runs on the rayon
/// pool when the `parallel` feature is enabled and degrades to a plain loop
/// otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Order-preserving map.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Send + Sync,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel => par_map(items, f),
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    items.iter().map(f).collect()
}

/// Sets the global worker count. Only the first call has an effect; later
/// calls and builds without the `parallel` feature are no-ops.
pub fn set_workers(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub limits: Limits,
    pub exec: Exec,
}

impl Config {
    pub fn sequential() -> Self {
        Config { exec: Exec::Sequential, ..Default::default() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_schedules_agree() {
        let xs: Vec<u64> = (0..200).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
    }
}
