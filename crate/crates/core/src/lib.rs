//! All-pairs geodesic distances on grayscale images.
//!
//! Each geodesic propagation yields a shortest-path tree; every
//! ancestor/descendant pair in that tree has a known distance (the
//! difference of their distances from the root), so the `N×N` distances
//! array fills in far fewer than `N` propagations. How fast it fills
//! depends on which sources are chosen, and this crate implements five
//! source-selection strategies plus a harness to compare them.
//!
//! ```
//! use geofill::{run_strategy, Image, Metric, StrategyKind};
//!
//! let image = Image::new(3, 2, vec![10, 20, 30, 40, 50, 60]).unwrap();
//! let run = run_strategy(&image, Metric::Sum, StrategyKind::FillingRate, 0).unwrap();
//! assert!(run.distances.is_full());
//! assert!(run.trace.raw_count < image.len());
//! ```

pub mod error;
pub mod grid;
pub mod harness;
pub mod propagation;
pub mod store;
pub mod strategy;

pub use error::{Error, Result};
pub use grid::{Dims, Image, Metric, Path, PixelId, Weight, WEIGHT_SCALE};
pub use propagation::{boundary_pixels, build_tree, propagate, GeodesicTree, PropagationResult};
pub use store::{DistanceArray, FillStats, Rate, DEFAULT_MAX_PIXELS, UNFILLED};
pub use strategy::{
    relative_difference, run_strategy, run_strategy_with, FillingTrace, RunOptions, RunResult,
    StrategyKind,
};
