//! Execution strategy for universe sweeps.
//!
//! Sweeps are data-parallel: each (input, check) pair is independent and
//! results are collected in input order, so reports stay deterministic.
//! With the `parallel` feature (default) [`par_map`] runs on rayon;
//! without it, it degrades to the sequential path. [`seq_map`] is always
//! sequential and exists so benchmarks can compare both.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

pub fn seq_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
