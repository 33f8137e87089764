//! Geodesic centroid, geodesic extrema and the two selectors built on them.

use crate::error::{Error, Result};
use crate::grid::{Image, Metric, PixelId, Weight};
use crate::propagation::{boundary_pixels, propagate};
use crate::store::DistanceArray;

/// Result of the two preliminary propagations (from the frame, then from
/// the centroid).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremaContext {
    /// Pixel farthest from the image frame, smallest index on ties.
    pub centroid: PixelId,
    /// All pixels by decreasing distance from the centroid, ties by index.
    pub ext: Vec<PixelId>,
    pub dist_from_centroid: Vec<Weight>,
    pub dist_from_boundary: Vec<Weight>,
}

/// Number of propagations spent building an [`ExtremaContext`].
pub const EXTREMA_OVERHEAD: usize = 2;

impl ExtremaContext {
    pub fn compute(image: &Image, metric: Metric) -> Result<Self> {
        let from_boundary = propagate(image, metric, &boundary_pixels(image.dims()))?;
        let dist_from_boundary = from_boundary.dist;
        let centroid = dist_from_boundary
            .iter()
            .enumerate()
            // max_by_key keeps the last maximum; reverse to keep the first.
            .rev()
            .max_by_key(|&(_, &d)| d)
            .map(|(i, _)| PixelId(i))
            .expect("image has pixels");

        let dist_from_centroid = propagate(image, metric, &[centroid])?.dist;
        let mut ext: Vec<PixelId> = (0..image.len()).map(PixelId).collect();
        ext.sort_by(|a, b| {
            dist_from_centroid[b.0]
                .cmp(&dist_from_centroid[a.0])
                .then(a.cmp(b))
        });
        Ok(Self {
            centroid,
            ext,
            dist_from_centroid,
            dist_from_boundary,
        })
    }
}

/// Geodesic extrema method: among the unfilled pixels farthest from the
/// centroid, the least filled one (smallest index on ties).
pub fn next_source_extrema(store: &DistanceArray, ctx: &ExtremaContext) -> Result<PixelId> {
    if store.is_full() {
        return Err(Error::ArrayFull);
    }
    let mut unfilled = ctx
        .ext
        .iter()
        .copied()
        .filter(|&p| !store.is_point_filled(p));
    let first = unfilled.next().ok_or(Error::ArrayFull)?;
    let farthest = ctx.dist_from_centroid[first.0];
    let mut best = first;
    for p in unfilled.take_while(|p| ctx.dist_from_centroid[p.0] == farthest) {
        if store.point_filled_count(p) < store.point_filled_count(best) {
            best = p;
        }
    }
    Ok(best)
}

/// Filling-rate method: the least filled pixel; among several, the one
/// farthest from the centroid (then smallest index).
pub fn next_source_filling_rate(store: &DistanceArray, ctx: &ExtremaContext) -> Result<PixelId> {
    if store.is_full() {
        return Err(Error::ArrayFull);
    }
    let mut best = ctx.ext[0];
    for &p in &ctx.ext[1..] {
        if store.point_filled_count(p) < store.point_filled_count(best) {
            best = p;
        }
    }
    Ok(best)
}
