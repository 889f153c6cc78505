//! Chunked parallel scans.
//!
//! Every scan is split into contiguous chunks that rayon processes in any
//! order; the per-chunk outcomes are then merged by chunk index, so the
//! result does not depend on the thread count.

use std::ops::Range;

use pgcover_core::verify::{self, HoleScan, Mode, Outcome};
use pgcover_core::Geometry;
use rayon::prelude::*;

use crate::{Error, Result};

const MIN_CHUNK: u64 = 1 << 12;

fn chunks(total: u64, threads: usize) -> Vec<Range<u64>> {
    let per = (total / (threads as u64 * 8).max(1)).max(MIN_CHUNK);
    let mut out = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + per).min(total);
        out.push(start..end);
        start = end;
    }
    out
}

fn merge_all(parts: Vec<Outcome>) -> Outcome {
    let mut out = Outcome::default();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Runs `f` inside a pool of `threads` workers, or the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Threads(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn scan(scan: &HoleScan<'_>, mode: Mode, seed: u64, budget: u128) -> Result<Outcome> {
    let threads = rayon::current_num_threads();
    let parts: Vec<Outcome> = match mode {
        Mode::Exhaustive => {
            scan.check_budget(budget)?;
            // within the budget, so the count fits in a u64
            let total = scan.exhaustive_count() as u64;
            chunks(total, threads)
                .into_par_iter()
                .map(|r| scan.scan_exhaustive(r.start as u128..r.end as u128))
                .collect()
        }
        Mode::Sampled { samples, sampler } => chunks(samples, threads)
            .into_par_iter()
            .map(|r| scan.scan_sampled(sampler, seed, r))
            .collect(),
    };
    Ok(merge_all(parts))
}

pub fn reduction(geo: &Geometry, trials: u64, seed: u64, orders: usize) -> Outcome {
    let parts: Vec<Outcome> = chunks(trials, rayon::current_num_threads())
        .into_par_iter()
        .map(|r| verify::verify_reduction_uniqueness(geo, r, seed, orders))
        .collect();
    merge_all(parts)
}
