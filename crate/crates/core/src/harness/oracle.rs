//! Ground truth: one propagation per pixel, rows only, no tree reuse.

use crate::error::Result;
use crate::grid::{Image, Metric, PixelId};
use crate::propagation::propagate;
use crate::store::DistanceArray;

pub fn brute_force_oracle(
    image: &Image,
    metric: Metric,
    max_pixels: usize,
) -> Result<DistanceArray> {
    let mut store = DistanceArray::with_max_pixels(image.len(), max_pixels)?;
    for i in 0..image.len() {
        let source = PixelId(i);
        let result = propagate(image, metric, &[source])?;
        store.fill_row(source, &result.dist)?;
    }
    debug_assert!(store.is_full());
    Ok(store)
}

/// First pair where `candidate` disagrees with `oracle`, described for
/// diagnostics; `None` when the arrays are identical.
pub fn first_mismatch(oracle: &DistanceArray, candidate: &DistanceArray) -> Option<String> {
    if oracle.n() != candidate.n() {
        return Some(format!("size {} vs oracle {}", candidate.n(), oracle.n()));
    }
    let n = oracle.n();
    oracle
        .distances()
        .iter()
        .zip(candidate.distances())
        .position(|(a, b)| a != b)
        .map(|k| {
            format!(
                "pair ({}, {}): got {}, oracle {}",
                k / n,
                k % n,
                candidate.distances()[k],
                oracle.distances()[k]
            )
        })
}
