//! Source-selection strategies and the loop that fills the distances array.

mod extrema;
mod spiral;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use extrema::{
    next_source_extrema, next_source_filling_rate, ExtremaContext, EXTREMA_OVERHEAD,
};
pub use spiral::{spiral_turns, SpiralState};

use crate::error::{Error, Result};
use crate::grid::{Image, Metric, PixelId};
use crate::propagation::{build_tree, propagate};
use crate::store::{DistanceArray, Rate, DEFAULT_MAX_PIXELS};

/// Default repulsion distance along a spiral turn.
pub const DEFAULT_REPULSION: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    Naive,
    Spiral,
    SpiralRepulsion { h: usize },
    Extrema,
    FillingRate,
}

impl StrategyKind {
    /// The five strategies in canonical order, repulsion at `h`.
    pub fn all(h: usize) -> [StrategyKind; 5] {
        [
            StrategyKind::Naive,
            StrategyKind::Spiral,
            StrategyKind::SpiralRepulsion { h },
            StrategyKind::Extrema,
            StrategyKind::FillingRate,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Naive => "naive",
            StrategyKind::Spiral => "spiral",
            StrategyKind::SpiralRepulsion { .. } => "spiral-repulsion",
            StrategyKind::Extrema => "extrema",
            StrategyKind::FillingRate => "filling-rate",
        }
    }

    /// Propagations spent before the first source is chosen.
    pub fn overhead(self) -> usize {
        match self {
            StrategyKind::Extrema | StrategyKind::FillingRate => EXTREMA_OVERHEAD,
            _ => 0,
        }
    }

    pub fn uses_rng(self) -> bool {
        matches!(
            self,
            StrategyKind::Spiral | StrategyKind::SpiralRepulsion { .. }
        )
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "naive" => Ok(StrategyKind::Naive),
            "spiral" => Ok(StrategyKind::Spiral),
            "spiral-repulsion" => Ok(StrategyKind::SpiralRepulsion {
                h: DEFAULT_REPULSION,
            }),
            "extrema" => Ok(StrategyKind::Extrema),
            "filling-rate" => Ok(StrategyKind::FillingRate),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

/// Naive baseline: smallest-index pixel whose row is not complete.
pub fn next_source_naive(store: &DistanceArray) -> Result<PixelId> {
    (0..store.n())
        .map(PixelId)
        .find(|&p| !store.is_point_filled(p))
        .ok_or(Error::ArrayFull)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceSample {
    /// 1-based index of the propagation.
    pub propagation_index: usize,
    pub source: PixelId,
    /// Pairs known after this propagation.
    pub filled_pairs: u64,
    pub tau: Rate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingTrace {
    pub samples: Vec<TraceSample>,
    pub raw_count: usize,
    /// `raw_count` plus the propagations spent on extrema.
    pub adjusted_count: usize,
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub kind: StrategyKind,
    pub metric: Metric,
    pub seed: u64,
    pub distances: DistanceArray,
    pub trace: FillingTrace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Let the naive baseline fill from its geodesic trees too.
    pub naive_with_tree: bool,
    pub max_pixels: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            naive_with_tree: false,
            max_pixels: DEFAULT_MAX_PIXELS,
        }
    }
}

enum Selector {
    Naive,
    Spiral(Box<(SpiralState, ChaCha8Rng)>),
    Extrema(ExtremaContext),
    FillingRate(ExtremaContext),
}

impl Selector {
    fn new(image: &Image, metric: Metric, kind: StrategyKind, seed: u64) -> Result<Self> {
        let dims = image.dims();
        Ok(match kind {
            StrategyKind::Naive => Selector::Naive,
            StrategyKind::Spiral => Selector::Spiral(Box::new((
                SpiralState::new(dims),
                ChaCha8Rng::seed_from_u64(seed),
            ))),
            StrategyKind::SpiralRepulsion { h } => Selector::Spiral(Box::new((
                SpiralState::with_repulsion(dims, h)?,
                ChaCha8Rng::seed_from_u64(seed),
            ))),
            StrategyKind::Extrema => Selector::Extrema(ExtremaContext::compute(image, metric)?),
            StrategyKind::FillingRate => {
                Selector::FillingRate(ExtremaContext::compute(image, metric)?)
            }
        })
    }

    fn next(&mut self, store: &DistanceArray) -> Result<PixelId> {
        match self {
            Selector::Naive => next_source_naive(store),
            Selector::Spiral(spiral) => {
                let (state, rng) = &mut **spiral;
                state.next_source(store, rng)
            }
            Selector::Extrema(ctx) => next_source_extrema(store, ctx),
            Selector::FillingRate(ctx) => next_source_filling_rate(store, ctx),
        }
    }
}

/// Fills the whole distances array with `kind`, with default options.
pub fn run_strategy(
    image: &Image,
    metric: Metric,
    kind: StrategyKind,
    seed: u64,
) -> Result<RunResult> {
    run_strategy_with(image, metric, kind, seed, &RunOptions::default())
}

/// Repeats select → propagate → fill until every pair is known.
pub fn run_strategy_with(
    image: &Image,
    metric: Metric,
    kind: StrategyKind,
    seed: u64,
    options: &RunOptions,
) -> Result<RunResult> {
    let mut store = DistanceArray::with_max_pixels(image.len(), options.max_pixels)?;
    let mut selector = Selector::new(image, metric, kind, seed)?;
    let use_tree = kind != StrategyKind::Naive || options.naive_with_tree;
    let mut samples = Vec::new();

    while !store.is_full() {
        let source = selector.next(&store)?;
        assert!(
            !store.is_point_filled(source),
            "{kind} selected already filled pixel {source}"
        );
        let result = propagate(image, metric, &[source])?;
        if use_tree {
            let tree = build_tree(&result, source)?;
            store.fill_from_tree(&tree)?;
        } else {
            store.fill_row(source, &result.dist)?;
        }
        samples.push(TraceSample {
            propagation_index: samples.len() + 1,
            source,
            filled_pairs: store.pairs_filled(),
            tau: store.filling_rate(),
        });
    }

    let raw_count = samples.len();
    Ok(RunResult {
        kind,
        metric,
        seed,
        distances: store,
        trace: FillingTrace {
            samples,
            raw_count,
            adjusted_count: raw_count + kind.overhead(),
        },
    })
}

/// Relative reduction, in percent, of `method` against `baseline`.
pub fn relative_difference(baseline: f64, method: f64) -> Result<f64> {
    if baseline.is_nan() || baseline <= 0.0 {
        return Err(Error::ZeroBaseline);
    }
    Ok(100.0 * (baseline - method) / baseline)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_image(w: usize, h: usize, salt: usize) -> Image {
        let vals = (0..w * h)
            .map(|i| ((i * 73 + salt * 31 + (i * i) % 17) % 255 + 1) as u8)
            .collect();
        Image::new(w, h, vals).unwrap()
    }

    #[test]
    fn naive_sequence() {
        let mut store = DistanceArray::new(4).unwrap();
        assert_eq!(next_source_naive(&store).unwrap(), PixelId(0));
        store.fill_row(PixelId(0), &[0, 1, 1, 1]).unwrap();
        assert_eq!(next_source_naive(&store).unwrap(), PixelId(1));

        let img = Image::constant(2, 2, 4).unwrap();
        let run = run_strategy(&img, Metric::Sum, StrategyKind::Naive, 0).unwrap();
        let sources: Vec<_> = run.trace.samples.iter().map(|s| s.source.0).collect();
        assert_eq!(sources, vec![0, 1, 2]);
    }

    #[test]
    fn naive_takes_n_minus_one() {
        for salt in 0..3 {
            let img = sample_image(5, 4, salt);
            let run = run_strategy(&img, Metric::Sum, StrategyKind::Naive, 0).unwrap();
            assert_eq!(run.trace.raw_count, img.len() - 1);
            assert_eq!(run.trace.adjusted_count, run.trace.raw_count);
        }
    }

    #[test]
    fn every_strategy_completes_with_same_distances() {
        let img = sample_image(6, 5, 1);
        let reference = run_strategy(&img, Metric::Sum, StrategyKind::Naive, 0).unwrap();
        for kind in StrategyKind::all(DEFAULT_REPULSION) {
            for seed in 0..3 {
                let run = run_strategy(&img, Metric::Sum, kind, seed).unwrap();
                assert!(run.distances.is_full());
                assert_eq!(run.distances, reference.distances, "{kind}");
                let last = run.trace.samples.last().unwrap();
                assert_eq!(last.tau, Rate::from_integer(1));
                assert!(run.trace.raw_count <= img.len());
                assert_eq!(
                    run.trace.adjusted_count,
                    run.trace.raw_count + kind.overhead()
                );
            }
        }
    }

    #[test]
    fn tree_strategies_strictly_increase_tau() {
        let img = sample_image(7, 7, 2);
        for kind in StrategyKind::all(2).into_iter().skip(1) {
            let run = run_strategy(&img, Metric::Sum, kind, 9).unwrap();
            for w in run.trace.samples.windows(2) {
                assert!(w[0].tau < w[1].tau, "{kind}");
            }
        }
    }

    #[test]
    fn naive_with_tree_option() {
        let img = sample_image(6, 6, 4);
        let opts = RunOptions {
            naive_with_tree: true,
            ..RunOptions::default()
        };
        let run = run_strategy_with(&img, Metric::Sum, StrategyKind::Naive, 0, &opts).unwrap();
        assert!(run.trace.raw_count < img.len());
        let plain = run_strategy(&img, Metric::Sum, StrategyKind::Naive, 0).unwrap();
        assert_eq!(run.distances, plain.distances);
    }

    #[test]
    fn source_is_filled_after_its_propagation() {
        let img = sample_image(5, 5, 3);
        for kind in StrategyKind::all(3).into_iter().skip(1) {
            let run = run_strategy(&img, Metric::Sum, kind, 1).unwrap();
            // Replay: each source had τ < 1 before and τ = 1 after.
            let mut store = DistanceArray::new(img.len()).unwrap();
            for s in &run.trace.samples {
                assert!(!store.is_point_filled(s.source));
                let r = propagate(&img, Metric::Sum, &[s.source]).unwrap();
                store
                    .fill_from_tree(&build_tree(&r, s.source).unwrap())
                    .unwrap();
                assert!(store.is_point_filled(s.source));
                assert_eq!(store.pairs_filled(), s.filled_pairs);
            }
        }
    }

    #[test]
    fn spiral_runs_reproducible() {
        let img = sample_image(8, 8, 5);
        for kind in [StrategyKind::Spiral, StrategyKind::SpiralRepulsion { h: 3 }] {
            let a = run_strategy(&img, Metric::Sum, kind, 42).unwrap();
            let b = run_strategy(&img, Metric::Sum, kind, 42).unwrap();
            assert_eq!(a.trace, b.trace);
        }
    }

    #[test]
    fn other_metrics_complete() {
        let img = sample_image(4, 4, 6);
        for metric in Metric::ALL {
            let a = run_strategy(&img, metric, StrategyKind::FillingRate, 0).unwrap();
            let b = run_strategy(&img, metric, StrategyKind::Naive, 0).unwrap();
            assert_eq!(a.distances, b.distances, "{metric}");
        }
    }

    #[test]
    fn relative_differences() {
        assert_eq!(relative_difference(624.0, 624.0).unwrap(), 0.0);
        assert_eq!(relative_difference(624.0, 468.0).unwrap(), 25.0);
        assert!(matches!(
            relative_difference(0.0, 1.0),
            Err(Error::ZeroBaseline)
        ));
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in StrategyKind::all(DEFAULT_REPULSION) {
            assert_eq!(kind.name().parse::<StrategyKind>().unwrap(), kind);
        }
        assert!("random".parse::<StrategyKind>().is_err());
    }
}
