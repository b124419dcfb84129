// SPDX-License-Identifier: Apache-2.0

//! Imaginary quadratic fields whose class group exponent divides `l`.

use rayon::prelude::*;

use crate::arith;
use crate::classgroup::{reduced_forms, FormClassGroup};
use crate::error::Result;
use crate::quadfield::QuadField;

/// Exponent of the class group (lcm of the invariant factors).
pub fn exponent(field: QuadField) -> Result<u64> {
    Ok(FormClassGroup::build(field)?.exponent())
}

/// Whether every reduced form of discriminant `-delta` has order dividing `l`.
/// Stops at the first form that does not.
pub fn exponent_divides(delta: u64, l: u64) -> Result<bool> {
    for f in reduced_forms(delta) {
        if !f.pow(l)?.is_principal() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn scan(l: u64, lo: u64, hi: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for delta in lo..=hi {
        if arith::is_fundamental(delta) && exponent_divides(delta, l)? {
            out.push(delta);
        }
    }
    Ok(out)
}

/// All fundamental `delta` in `3..=bound` with class group exponent dividing `l`, ascending.
pub fn search(l: u64, bound: u64) -> Result<Vec<u64>> {
    scan(l, 3, bound)
}

const CHUNK: u64 = 4096;

/// [`search`] split into fixed discriminant ranges on `jobs` threads; same output.
pub fn search_parallel(l: u64, bound: u64, jobs: usize) -> Result<Vec<u64>> {
    if bound < 3 {
        return Ok(Vec::new());
    }
    let ranges: Vec<(u64, u64)> = (3..=bound)
        .step_by(CHUNK as usize)
        .map(|lo| (lo, (lo + CHUNK - 1).min(bound)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let parts = pool.install(|| {
        ranges
            .par_iter()
            .map(|&(lo, hi)| scan(l, lo, hi))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(parts.concat())
}
