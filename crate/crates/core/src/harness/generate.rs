//! Seeded synthetic test images: smooth bumps, a hairpin corridor, noise.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::Image;

pub const CORRIDOR_LEVEL: i32 = 16;
pub const BACKGROUND_LEVEL: i32 = 240;
pub const JITTER: i32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    Bumps,
    HairpinBend,
    Random,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::Bumps => "bumps",
            Pattern::HairpinBend => "hairpin",
            Pattern::Random => "random",
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "bumps" => Ok(Pattern::Bumps),
            "hairpin" | "hairpin-bend" => Ok(Pattern::HairpinBend),
            "random" => Ok(Pattern::Random),
            other => Err(format!(
                "unknown image pattern `{other}` (bumps, hairpin, random)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorKind {
    pub pattern: Pattern,
    pub width: usize,
    pub height: usize,
    pub seed: u64,
}

impl GeneratorKind {
    pub fn new(pattern: Pattern, width: usize, height: usize, seed: u64) -> Self {
        Self {
            pattern,
            width,
            height,
            seed,
        }
    }
}

/// Builds the image described by `kind`; identical inputs give identical images.
pub fn generate_image(kind: &GeneratorKind) -> Result<Image> {
    let (w, h) = (kind.width, kind.height);
    if w < 2 || h < 2 {
        return Err(Error::InvalidDimensions {
            width: w,
            height: h,
            reason: "generated images must be at least 2x2",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(kind.seed);
    let values = match kind.pattern {
        Pattern::Random => (0..w * h).map(|_| rng.gen_range(1..=255u8)).collect(),
        Pattern::Bumps => bumps(w, h, &mut rng),
        Pattern::HairpinBend => hairpin(w, h, &mut rng),
    };
    Image::new(w, h, values)
}

/// Sum of 3 to 6 isotropic Gaussians, stretched affinely onto [1, 255].
fn bumps(w: usize, h: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let side = w.min(h) as f64;
    let count = rng.gen_range(3..=6);
    let params: Vec<(f64, f64, f64, f64)> = (0..count)
        .map(|_| {
            let cx = rng.gen_range(0.0..w as f64);
            let cy = rng.gen_range(0.0..h as f64);
            let sigma = rng.gen_range(side / 8.0..side / 3.0).max(0.5);
            let amp = rng.gen_range(0.5..1.0);
            (cx, cy, sigma, amp)
        })
        .collect();
    let field: Vec<f64> = (0..w * h)
        .map(|i| {
            let (x, y) = ((i % w) as f64, (i / w) as f64);
            params
                .iter()
                .map(|&(cx, cy, s, a)| {
                    let d2 = (x - cx).powi(2) + (y - cy).powi(2);
                    a * (-d2 / (2.0 * s * s)).exp()
                })
                .sum()
        })
        .collect();
    let lo = field.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = field.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    field
        .iter()
        .map(|&v| {
            if span > 0.0 {
                (1.0 + 254.0 * (v - lo) / span).round() as u8
            } else {
                128
            }
        })
        .collect()
}

/// Pixels of the U-shaped corridor: two vertical arms joined at the bottom,
/// three pixels wide (narrower on tiny images).
pub fn hairpin_corridor(width: usize, height: usize) -> Vec<bool> {
    let half = if width.min(height) >= 9 { 1 } else { 0 };
    let left = width / 4;
    let right = width - 1 - width / 4;
    let top = height / 6;
    let bottom = height - 1 - height / 6;
    let within = |v: usize, center: usize| v.abs_diff(center) <= half;
    (0..width * height)
        .map(|i| {
            let (r, c) = (i / width, i % width);
            let arm =
                (within(c, left) || within(c, right)) && r + half >= top && r <= bottom + half;
            let bend = within(r, bottom) && c + half >= left && c <= right + half;
            arm || bend
        })
        .collect()
}

fn hairpin(w: usize, h: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    hairpin_corridor(w, h)
        .into_iter()
        .map(|inside| {
            let base = if inside {
                CORRIDOR_LEVEL
            } else {
                BACKGROUND_LEVEL
            };
            (base + rng.gen_range(-JITTER..=JITTER)).clamp(1, 255) as u8
        })
        .collect()
}
