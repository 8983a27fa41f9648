//! Worker plumbing shared by the parallel and sequential builds.
//!
//! With the `parallel` feature the heavy loops run on rayon; without it they
//! degrade to plain iteration. Results are always merged in a
//! partition-independent order, so output never depends on the worker count.

use std::collections::BTreeSet;

/// Runs `f` on a pool with the requested number of workers. `None` means the
/// default pool; the sequential build ignores the hint entirely.
#[cfg(feature = "parallel")]
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match jobs {
        None => f(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .expect("worker pool")
            .install(f),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    let _ = jobs;
    f()
}

/// Order-preserving map over a slice.
#[cfg(feature = "parallel")]
pub(crate) fn par_map<I: Sync, T: Send>(
    items: &[I],
    f: impl Fn(&I) -> T + Sync + Send,
) -> Vec<T> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<I, T>(items: &[I], f: impl Fn(&I) -> T) -> Vec<T> {
    items.iter().map(f).collect()
}

const MASK_CHUNK: u64 = 1 << 13;

/// Feeds every value in `0..total` through `per` and collects the hits into
/// one ordered set.
#[cfg(feature = "parallel")]
pub(crate) fn collect_over_masks<T: Ord + Send>(
    total: u64,
    per: impl Fn(u64) -> Option<T> + Sync + Send,
) -> BTreeSet<T> {
    use rayon::prelude::*;
    let chunks = total.div_ceil(MASK_CHUNK);
    (0..chunks)
        .into_par_iter()
        .fold(BTreeSet::new, |mut set, c| {
            let lo = c * MASK_CHUNK;
            let hi = (lo + MASK_CHUNK).min(total);
            for mask in lo..hi {
                if let Some(t) = per(mask) {
                    set.insert(t);
                }
            }
            set
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        })
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn collect_over_masks<T: Ord + Send>(
    total: u64,
    per: impl Fn(u64) -> Option<T> + Sync + Send,
) -> BTreeSet<T> {
    let mut set = BTreeSet::new();
    for mask in 0..total {
        if let Some(t) = per(mask) {
            set.insert(t);
        }
    }
    set
}
