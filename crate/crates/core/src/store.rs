//! The all-pairs distances array `D` and its mark matrix.
//!
//! Besides the dense `N×N` distances and marks, the store keeps the number
//! of filled pairs and a per-pixel count of filled partners up to date on
//! every write, so filling rates are O(1) queries.

use std::io::{Read, Write};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::grid::{PixelId, Weight};
use crate::propagation::GeodesicTree;

/// Value stored for pairs whose distance is not known yet.
pub const UNFILLED: Weight = Weight::MAX;

/// Default limit on `N`; the array needs `N²` entries.
pub const DEFAULT_MAX_PIXELS: usize = 10_000;

/// Exact filling rate.
pub type Rate = Ratio<u64>;

/// Bookkeeping counts `A`, `a` and the rate `τ = a / A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FillStats {
    pub total_pairs: u64,
    pub filled_pairs: u64,
}

impl FillStats {
    pub fn rate(&self) -> Rate {
        Ratio::new(self.filled_pairs, self.total_pairs)
    }
}

/// Number of off-diagonal pairs, `(N² − N) / 2`.
pub fn total_pairs(n: usize) -> u64 {
    let n = n as u64;
    (n * n - n) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceArray {
    n: usize,
    dist: Vec<Weight>,
    mark: Vec<bool>,
    filled_pairs: u64,
    /// Off-diagonal marks per row.
    row_filled: Vec<u32>,
}

impl DistanceArray {
    /// Fresh array for `n` pixels, subject to [`DEFAULT_MAX_PIXELS`].
    pub fn new(n: usize) -> Result<Self> {
        Self::with_max_pixels(n, DEFAULT_MAX_PIXELS)
    }

    pub fn with_max_pixels(n: usize, max_pixels: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimensions {
                width: n,
                height: 1,
                reason: "at least two pixels are required",
            });
        }
        if n > max_pixels || n.checked_mul(n).is_none() || n > u32::MAX as usize {
            return Err(Error::MemoryGuard {
                n,
                limit: max_pixels,
            });
        }
        let mut dist = vec![UNFILLED; n * n];
        let mut mark = vec![false; n * n];
        for i in 0..n {
            dist[i * n + i] = 0;
            mark[i * n + i] = true;
        }
        Ok(Self {
            n,
            dist,
            mark,
            filled_pairs: 0,
            row_filled: vec![0; n],
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_marked(&self, i: PixelId, j: PixelId) -> bool {
        self.mark[i.0 * self.n + j.0]
    }

    /// Known distance of a pair, `None` while unfilled.
    pub fn get(&self, i: PixelId, j: PixelId) -> Option<Weight> {
        let k = i.0 * self.n + j.0;
        self.mark[k].then_some(self.dist[k])
    }

    /// Raw row-major distances, [`UNFILLED`] where unmarked.
    pub fn distances(&self) -> &[Weight] {
        &self.dist
    }

    pub fn row(&self, i: PixelId) -> &[Weight] {
        &self.dist[i.0 * self.n..(i.0 + 1) * self.n]
    }

    /// Records `d(u, v) = d(v, u) = d`. Returns whether the pair was new.
    #[inline]
    fn set_pair(&mut self, u: usize, v: usize, d: Weight) -> bool {
        let n = self.n;
        let uv = u * n + v;
        if self.mark[uv] {
            debug_assert_eq!(self.dist[uv], d, "conflicting distances for ({u}, {v})");
            return false;
        }
        let vu = v * n + u;
        self.mark[uv] = true;
        self.mark[vu] = true;
        self.dist[uv] = d;
        self.dist[vu] = d;
        self.row_filled[u] += 1;
        self.row_filled[v] += 1;
        self.filled_pairs += 1;
        true
    }

    fn check_pixel(&self, i: PixelId) -> Result<()> {
        if i.0 < self.n {
            Ok(())
        } else {
            Err(Error::InvalidPixel {
                index: i.0,
                len: self.n,
            })
        }
    }

    /// Records every ancestor/descendant pair of the tree: the distance
    /// between two pixels on one root path is the difference of their
    /// distances from the root. Returns the number of newly filled pairs.
    pub fn fill_from_tree(&mut self, tree: &GeodesicTree) -> Result<u64> {
        if tree.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: tree.len(),
            });
        }
        let mut added = 0;
        // Depth-first walk keeping the current root path on `ancestors`.
        let mut ancestors: Vec<usize> = Vec::new();
        let mut stack: Vec<(usize, usize)> = vec![(tree.root.0, 0)];
        while let Some((v, depth)) = stack.pop() {
            ancestors.truncate(depth);
            let dv = tree.dist[v];
            for &u in &ancestors {
                if self.set_pair(u, v, dv - tree.dist[u]) {
                    added += 1;
                }
            }
            ancestors.push(v);
            for &c in tree.children[v].iter().rev() {
                stack.push((c.0, depth + 1));
            }
        }
        Ok(added)
    }

    /// Records the distances from `source` to every pixel, i.e. one row and
    /// by symmetry one column. Returns the number of newly filled pairs.
    pub fn fill_row(&mut self, source: PixelId, dist: &[Weight]) -> Result<u64> {
        self.check_pixel(source)?;
        if dist.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: dist.len(),
            });
        }
        let mut added = 0;
        for (v, &d) in dist.iter().enumerate() {
            if v != source.0 && self.set_pair(source.0, v, d) {
                added += 1;
            }
        }
        Ok(added)
    }

    /// Number of filled pairs `a`, maintained incrementally.
    #[inline]
    pub fn pairs_filled(&self) -> u64 {
        self.filled_pairs
    }

    /// `a` recomputed from the mark matrix: (Σ marks − N) / 2.
    pub fn recount_pairs_filled(&self) -> u64 {
        let marked = self.mark.iter().filter(|&&m| m).count() as u64;
        (marked - self.n as u64) / 2
    }

    pub fn total_pairs(&self) -> u64 {
        total_pairs(self.n)
    }

    pub fn stats(&self) -> FillStats {
        FillStats {
            total_pairs: self.total_pairs(),
            filled_pairs: self.filled_pairs,
        }
    }

    /// Array filling rate `τ = a / A`.
    pub fn filling_rate(&self) -> Rate {
        self.stats().rate()
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.filled_pairs == self.total_pairs()
    }

    /// Number of partners `k ≠ i` whose distance to `i` is known.
    #[inline]
    pub fn point_filled_count(&self, i: PixelId) -> u32 {
        self.row_filled[i.0]
    }

    /// `(Σ_k mark[k][i] − 1) / (N − 1)`.
    pub fn point_filling_rate(&self, i: PixelId) -> Result<Rate> {
        self.check_pixel(i)?;
        Ok(Ratio::new(
            u64::from(self.row_filled[i.0]),
            self.n as u64 - 1,
        ))
    }

    /// Same as `point_filling_rate`, recomputed from the mark column.
    pub fn recount_point_filling_rate(&self, i: PixelId) -> Result<Rate> {
        self.check_pixel(i)?;
        let marked = (0..self.n).filter(|&k| self.mark[k * self.n + i.0]).count() as u64;
        Ok(Ratio::new(marked - 1, self.n as u64 - 1))
    }

    #[inline]
    pub fn is_point_filled(&self, i: PixelId) -> bool {
        self.row_filled[i.0] as usize == self.n - 1
    }

    /// Marks one pair directly. Intended for tests and format readers.
    pub fn insert(&mut self, i: PixelId, j: PixelId, d: Weight) -> Result<bool> {
        self.check_pixel(i)?;
        self.check_pixel(j)?;
        if i == j {
            return Ok(false);
        }
        Ok(self.set_pair(i.0, j.0, d))
    }

    /// Writes the array in APGD format.
    pub fn write_apgd<W: Write>(&self, w: W) -> Result<()> {
        apgd::write(self, w)
    }

    pub fn to_apgd_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(apgd::HEADER_LEN + self.dist.len() * 8);
        apgd::write(self, &mut out).expect("writing to a Vec cannot fail");
        out
    }

    /// Reads an APGD stream; non-sentinel entries become marked pairs.
    pub fn read_apgd<R: Read>(r: R, max_pixels: usize) -> Result<Self> {
        apgd::read(r, max_pixels)
    }
}

/// Binary dump of a distances array.
///
/// Layout: `b"APGD"`, version byte `0x01`, `N` as little-endian `u32`, then
/// `N·N` little-endian `u64` scaled distances in row-major order, with
/// [`UNFILLED`] for unknown pairs.
pub mod apgd {
    use std::io::{BufReader, BufWriter, Read, Write};

    use super::{DistanceArray, UNFILLED};
    use crate::error::{Error, Result};
    use crate::grid::PixelId;

    pub const MAGIC: &[u8; 4] = b"APGD";
    pub const VERSION: u8 = 0x01;
    pub const HEADER_LEN: usize = 9;

    pub fn write<W: Write>(array: &DistanceArray, w: W) -> Result<()> {
        let mut w = BufWriter::new(w);
        w.write_all(MAGIC)?;
        w.write_all(&[VERSION])?;
        w.write_all(&(array.n as u32).to_le_bytes())?;
        for d in &array.dist {
            w.write_all(&d.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read<R: Read>(r: R, max_pixels: usize) -> Result<DistanceArray> {
        let mut r = BufReader::new(r);
        let mut header = [0u8; HEADER_LEN];
        r.read_exact(&mut header)
            .map_err(|_| Error::Apgd("truncated header".into()))?;
        if &header[..4] != MAGIC {
            return Err(Error::Apgd("bad magic".into()));
        }
        if header[4] != VERSION {
            return Err(Error::Apgd(format!("unsupported version {}", header[4])));
        }
        let n = u32::from_le_bytes(header[5..9].try_into().unwrap()) as usize;
        let mut array = DistanceArray::with_max_pixels(n, max_pixels)?;
        let mut buf = [0u8; 8];
        let mut raw = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            r.read_exact(&mut buf)
                .map_err(|_| Error::Apgd("truncated body".into()))?;
            raw.push(u64::from_le_bytes(buf));
        }
        if r.read(&mut buf)? != 0 {
            return Err(Error::Apgd("trailing bytes".into()));
        }
        for i in 0..n {
            if raw[i * n + i] != 0 {
                return Err(Error::Apgd(format!("nonzero diagonal at {i}")));
            }
            for j in i + 1..n {
                let (a, b) = (raw[i * n + j], raw[j * n + i]);
                if a != b {
                    return Err(Error::Apgd(format!("asymmetric entry ({i}, {j})")));
                }
                if a != UNFILLED {
                    array.insert(PixelId(i), PixelId(j), a)?;
                }
            }
        }
        Ok(array)
    }
}
