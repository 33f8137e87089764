//! Geodesic propagation (Dijkstra over the 8-connected grid) and the
//! geodesic tree it induces.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::grid::{Dims, Image, Metric, PixelId, Weight};

/// Distance of a pixel not reached yet.
const UNREACHED: Weight = Weight::MAX;

/// Outcome of one single- or multi-source propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagationResult {
    pub sources: Vec<PixelId>,
    /// Scaled geodesic distance to the nearest source.
    pub dist: Vec<Weight>,
    /// Predecessor on one geodesic path; `None` for sources.
    pub parent: Vec<Option<PixelId>>,
}

/// Runs a geodesic propagation from `sources`, all starting at distance 0.
///
/// A pixel's parent only changes on a strict distance improvement, and the
/// frontier pops equal distances by smallest pixel index, so the parent map
/// is a deterministic function of the inputs.
pub fn propagate(image: &Image, metric: Metric, sources: &[PixelId]) -> Result<PropagationResult> {
    if sources.is_empty() {
        return Err(Error::EmptySources);
    }
    let dims = image.dims();
    let n = dims.len();
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![None; n];
    let mut heap = BinaryHeap::with_capacity(n);
    for &s in sources {
        dims.check(s)?;
        if dist[s.0] == 0 {
            return Err(Error::DuplicateSource(s.0));
        }
        dist[s.0] = 0;
        heap.push(Reverse((0, s)));
    }

    let values = image.values();
    let mut settled = vec![false; n];
    while let Some(Reverse((d, u))) = heap.pop() {
        if settled[u.0] {
            continue;
        }
        settled[u.0] = true;
        let fu = values[u.0];
        for v in dims.neighbors_of(u) {
            if settled[v.0] {
                continue;
            }
            let nd = d + metric.weight(fu, values[v.0]);
            if nd < dist[v.0] {
                dist[v.0] = nd;
                parent[v.0] = Some(u);
                heap.push(Reverse((nd, v)));
            }
        }
    }

    Ok(PropagationResult {
        sources: sources.to_vec(),
        dist,
        parent,
    })
}

/// Shortest-path tree of a single-source propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicTree {
    pub root: PixelId,
    pub parent: Vec<Option<PixelId>>,
    pub children: Vec<Vec<PixelId>>,
    /// Scaled distance from the root.
    pub dist: Vec<Weight>,
    /// Pixels without children, increasing index order.
    pub leaves: Vec<PixelId>,
}

impl GeodesicTree {
    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// Pixels in depth-first pre-order from the root.
    pub fn preorder(&self) -> Vec<PixelId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u.0].iter().rev());
        }
        out
    }

    /// Builds a tree from an explicit parent map and root distances. Used for
    /// hand-built trees; `build_tree` is the usual entry point.
    pub fn from_parents(
        root: PixelId,
        parent: Vec<Option<PixelId>>,
        dist: Vec<Weight>,
    ) -> Result<Self> {
        let n = parent.len();
        if dist.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: dist.len(),
            });
        }
        if root.0 >= n {
            return Err(Error::InvalidPixel {
                index: root.0,
                len: n,
            });
        }
        if parent[root.0].is_some() {
            return Err(Error::RootMismatch {
                root: root.0,
                sources: vec![],
            });
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if p.0 >= n {
                    return Err(Error::InvalidPixel { index: p.0, len: n });
                }
                children[p.0].push(PixelId(v));
            }
        }
        let leaves = (0..n)
            .filter(|&v| children[v].is_empty())
            .map(PixelId)
            .collect();
        Ok(Self {
            root,
            parent,
            children,
            dist,
            leaves,
        })
    }
}

/// Materializes the geodesic tree of a propagation rooted at `root`.
pub fn build_tree(result: &PropagationResult, root: PixelId) -> Result<GeodesicTree> {
    if result.sources.as_slice() != [root] {
        return Err(Error::RootMismatch {
            root: root.0,
            sources: result.sources.iter().map(|s| s.0).collect(),
        });
    }
    GeodesicTree::from_parents(root, result.parent.clone(), result.dist.clone())
}

/// Pixels on the image frame, each once, increasing index order.
pub fn boundary_pixels(dims: Dims) -> Vec<PixelId> {
    let (w, h) = (dims.width, dims.height);
    (0..dims.len())
        .filter(|&i| {
            let (r, c) = (i / w, i % w);
            r == 0 || c == 0 || r == h - 1 || c == w - 1
        })
        .map(PixelId)
        .collect()
}
