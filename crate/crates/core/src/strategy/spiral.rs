//! Spiral source selection, with optional repulsion along the turn.

use rand::Rng;

use crate::error::{Error, Result};
use crate::grid::{Dims, PixelId};
use crate::store::DistanceArray;

/// Concentric one-pixel frames, outermost first. Turn `k` holds the pixels
/// with `min(row, col, H-1-row, W-1-col) = k`, listed clockwise from `(k, k)`.
pub fn spiral_turns(dims: Dims) -> Vec<Vec<PixelId>> {
    let (w, h) = (dims.width, dims.height);
    let px = |r: usize, c: usize| PixelId(r * w + c);
    let count = w.min(h).div_ceil(2);
    let mut turns = Vec::with_capacity(count);
    for k in 0..count {
        let (top, left, bottom, right) = (k, k, h - 1 - k, w - 1 - k);
        let mut turn = Vec::new();
        turn.extend((left..=right).map(|c| px(top, c)));
        turn.extend((top + 1..=bottom).map(|r| px(r, right)));
        if bottom > top {
            turn.extend((left..right).rev().map(|c| px(bottom, c)));
        }
        if right > left {
            turn.extend((top + 1..bottom).rev().map(|r| px(r, left)));
        }
        turns.push(turn);
    }
    turns
}

/// Selection state of the spiral method.
///
/// `candidates` is the list `S` of the current turn, kept in clockwise order
/// so that repulsion can drop the points on either side of a draw. Filled
/// pixels are pruned lazily when a source is requested.
#[derive(Clone, Debug)]
pub struct SpiralState {
    turns: Vec<Vec<PixelId>>,
    turn: usize,
    candidates: Vec<PixelId>,
    repulsion: Option<usize>,
}

impl SpiralState {
    pub fn new(dims: Dims) -> Self {
        Self {
            turns: spiral_turns(dims),
            turn: 0,
            candidates: Vec::new(),
            repulsion: None,
        }
    }

    /// Spiral with repulsion distance `h`: each draw also removes the `h - 1`
    /// nearest remaining candidates on each side of the source.
    pub fn with_repulsion(dims: Dims, h: usize) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidRepulsion(h));
        }
        Ok(Self {
            repulsion: Some(h),
            ..Self::new(dims)
        })
    }

    /// Index of the turn `S` was last drawn from.
    pub fn current_turn(&self) -> usize {
        self.turn
    }

    pub fn candidates(&self) -> &[PixelId] {
        &self.candidates
    }

    pub fn next_source<R: Rng + ?Sized>(
        &mut self,
        store: &DistanceArray,
        rng: &mut R,
    ) -> Result<PixelId> {
        if store.is_full() {
            return Err(Error::ArrayFull);
        }
        self.candidates.retain(|&p| !store.is_point_filled(p));
        if self.candidates.is_empty() {
            let (turn, unfilled) = self
                .turns
                .iter()
                .enumerate()
                .find_map(|(k, t)| {
                    let s: Vec<_> = t
                        .iter()
                        .copied()
                        .filter(|&p| !store.is_point_filled(p))
                        .collect();
                    (!s.is_empty()).then_some((k, s))
                })
                .ok_or(Error::ArrayFull)?;
            self.turn = turn;
            self.candidates = unfilled;
        }

        let pos = rng.gen_range(0..self.candidates.len());
        let source = self.candidates[pos];
        match self.repulsion {
            Some(h) => self.repel(pos, h),
            None => {
                self.candidates.remove(pos);
            }
        }
        Ok(source)
    }

    /// Drops the drawn candidate and its `h - 1` cyclic neighbors on each side.
    fn repel(&mut self, pos: usize, h: usize) {
        let len = self.candidates.len();
        let mut drop = vec![false; len];
        drop[pos] = true;
        for j in 1..h.min(len) {
            drop[(pos + j) % len] = true;
            drop[(pos + len - j) % len] = true;
        }
        let mut i = 0;
        self.candidates.retain(|_| {
            let keep = !drop[i];
            i += 1;
            keep
        });
    }
}
