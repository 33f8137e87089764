use std::io;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid image dimensions {width}x{height}: {reason}")]
    InvalidDimensions {
        width: usize,
        height: usize,
        reason: &'static str,
    },

    #[error("expected {expected} grey values, got {actual}")]
    ValueCountMismatch { expected: usize, actual: usize },

    #[error("grey level {value} at pixel {index} is outside [1, 255]")]
    GreyLevelOutOfRange { index: usize, value: u32 },

    #[error("pixel {index} is outside an image of {len} pixels")]
    InvalidPixel { index: usize, len: usize },

    #[error("pixels {0} and {1} are not 8-neighbors")]
    NotNeighbors(usize, usize),

    #[error("path is empty")]
    EmptyPath,

    #[error("propagation needs at least one source")]
    EmptySources,

    #[error("source pixel {0} given more than once")]
    DuplicateSource(usize),

    #[error("tree root {root} does not match propagation sources {sources:?}")]
    RootMismatch { root: usize, sources: Vec<usize> },

    #[error("size mismatch: expected {expected} pixels, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{n} pixels exceeds the memory guard of {limit} (an N×N array is needed)")]
    MemoryGuard { n: usize, limit: usize },

    #[error("the distances array is already full")]
    ArrayFull,

    #[error("relative difference needs a positive baseline count")]
    ZeroBaseline,

    #[error("invalid repulsion distance {0}, must be at least 1")]
    InvalidRepulsion(usize),

    #[error("PGM: {0}")]
    Pgm(String),

    #[error("APGD: {0}")]
    Apgd(String),

    #[error("oracle mismatch for image `{image}`, metric {metric}, strategy {strategy}, seed {seed}: {detail}")]
    OracleMismatch {
        image: String,
        metric: String,
        strategy: String,
        seed: u64,
        detail: String,
    },

    #[error("empty experiment parameter set: {0}")]
    EmptyParameterSet(&'static str),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
