//! Grayscale images seen as non-oriented 8-connected grid graphs.
//!
//! Edge weights are integers on a ×2 scale so that all three pseudo-metrics
//! share one exact comparison domain:
//!
//! | metric | unscaled            | stored                |
//! |--------|---------------------|-----------------------|
//! | `L1`   | `|f(p) - f(q)|`     | `2 |f(p) - f(q)|`     |
//! | `Sum`  | `f(p) + f(q)`       | `2 (f(p) + f(q))`     |
//! | `Mean` | `(f(p) + f(q)) / 2` | `f(p) + f(q)`         |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Scaled (×2) geodesic weight.
pub type Weight = u64;

/// Factor between stored weights and the unscaled pseudo-metric values.
pub const WEIGHT_SCALE: Weight = 2;

/// Index of a pixel in row-major order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PixelId(pub usize);

impl PixelId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for PixelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Width and height of a pixel grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dims {
    pub width: usize,
    pub height: usize,
}

const NEIGHBOR_OFFSETS: [(isize, isize); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

impl Dims {
    /// Grid of `width × height` pixels. At least two pixels are required so
    /// that the distances array has an off-diagonal pair.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions {
                width,
                height,
                reason: "both sides must be positive",
            });
        }
        if width.checked_mul(height).is_none_or(|n| n < 2) {
            return Err(Error::InvalidDimensions {
                width,
                height,
                reason: "at least two pixels are required",
            });
        }
        Ok(Self { width, height })
    }

    #[inline]
    pub fn len(self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn contains(self, p: PixelId) -> bool {
        p.0 < self.len()
    }

    pub fn check(self, p: PixelId) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::InvalidPixel {
                index: p.0,
                len: self.len(),
            })
        }
    }

    pub fn pixel(self, row: usize, col: usize) -> Result<PixelId> {
        if row >= self.height || col >= self.width {
            return Err(Error::InvalidPixel {
                index: row.saturating_mul(self.width).saturating_add(col),
                len: self.len(),
            });
        }
        Ok(PixelId(row * self.width + col))
    }

    /// `(row, col)` of a pixel. The caller guarantees `p` is in range.
    #[inline]
    pub fn row_col(self, p: PixelId) -> (usize, usize) {
        (p.0 / self.width, p.0 % self.width)
    }

    /// 8-neighbors of `p` in increasing index order.
    pub fn neighbors(self, p: PixelId) -> Result<Vec<PixelId>> {
        self.check(p)?;
        Ok(self.neighbors_of(p).collect())
    }

    /// Unchecked neighbor iteration, increasing index order.
    #[inline]
    pub(crate) fn neighbors_of(self, p: PixelId) -> impl Iterator<Item = PixelId> {
        let (row, col) = self.row_col(p);
        let (h, w) = (self.height as isize, self.width as isize);
        let width = self.width;
        NEIGHBOR_OFFSETS.iter().filter_map(move |&(dr, dc)| {
            let r = row as isize + dr;
            let c = col as isize + dc;
            if r < 0 || c < 0 || r >= h || c >= w {
                None
            } else {
                Some(PixelId(r as usize * width + c as usize))
            }
        })
    }

    pub fn are_neighbors(self, p: PixelId, q: PixelId) -> bool {
        if !self.contains(p) || !self.contains(q) || p == q {
            return false;
        }
        let (pr, pc) = self.row_col(p);
        let (qr, qc) = self.row_col(q);
        pr.abs_diff(qr) <= 1 && pc.abs_diff(qc) <= 1
    }
}

/// Edge pseudo-metric.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Metric {
    L1,
    #[default]
    Sum,
    Mean,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Sum, Metric::L1, Metric::Mean];

    pub fn name(self) -> &'static str {
        match self {
            Metric::L1 => "l1",
            Metric::Sum => "sum",
            Metric::Mean => "mean",
        }
    }

    /// Scaled weight between two grey levels.
    #[inline]
    pub fn weight(self, a: u8, b: u8) -> Weight {
        let (a, b) = (Weight::from(a), Weight::from(b));
        match self {
            Metric::L1 => WEIGHT_SCALE * a.abs_diff(b),
            Metric::Sum => WEIGHT_SCALE * (a + b),
            Metric::Mean => a + b,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Metric::L1),
            "sum" => Ok(Metric::Sum),
            "mean" => Ok(Metric::Mean),
            other => Err(format!(
                "unknown metric `{other}` (expected sum, l1 or mean)"
            )),
        }
    }
}

/// A grayscale image with grey levels in `[1, 255]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    dims: Dims,
    values: Vec<u8>,
}

impl Image {
    /// Builds an image from row-major grey levels.
    pub fn new(width: usize, height: usize, values: Vec<u8>) -> Result<Self> {
        let dims = Dims::new(width, height)?;
        if values.len() != dims.len() {
            return Err(Error::ValueCountMismatch {
                expected: dims.len(),
                actual: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|&v| v == 0) {
            return Err(Error::GreyLevelOutOfRange { index, value: 0 });
        }
        Ok(Self { dims, values })
    }

    /// Constant image, handy in tests.
    pub fn constant(width: usize, height: usize, value: u8) -> Result<Self> {
        let n = width.saturating_mul(height);
        Self::new(width, height, vec![value; n])
    }

    #[inline]
    pub fn dims(&self) -> Dims {
        self.dims
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.dims.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.dims.height
    }

    /// Number of pixels `N`.
    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn value(&self, p: PixelId) -> Result<u8> {
        self.dims.check(p)?;
        Ok(self.values[p.0])
    }

    /// Scaled weight of the edge `(p, q)`.
    pub fn edge_weight(&self, metric: Metric, p: PixelId, q: PixelId) -> Result<Weight> {
        self.dims.check(p)?;
        self.dims.check(q)?;
        if !self.dims.are_neighbors(p, q) {
            return Err(Error::NotNeighbors(p.0, q.0));
        }
        Ok(metric.weight(self.values[p.0], self.values[q.0]))
    }

    /// Sum of scaled edge weights along `path`. A single-pixel path has time 0.
    pub fn path_time(&self, metric: Metric, path: &Path) -> Result<Weight> {
        if path.dims != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: path.dims.len(),
            });
        }
        Ok(path
            .pixels
            .windows(2)
            .map(|w| metric.weight(self.values[w[0].0], self.values[w[1].0]))
            .sum())
    }
}

/// A chain of pixels where consecutive entries are 8-neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    dims: Dims,
    pixels: Vec<PixelId>,
}

impl Path {
    pub fn new(dims: Dims, pixels: Vec<PixelId>) -> Result<Self> {
        if pixels.is_empty() {
            return Err(Error::EmptyPath);
        }
        for &p in &pixels {
            dims.check(p)?;
        }
        if let Some(w) = pixels.windows(2).find(|w| !dims.are_neighbors(w[0], w[1])) {
            return Err(Error::NotNeighbors(w[0].0, w[1].0));
        }
        Ok(Self { dims, pixels })
    }

    pub fn pixels(&self) -> &[PixelId] {
        &self.pixels
    }
}
