use geofill::harness::{
    brute_force_oracle, first_mismatch, generate_image, run_experiment, ExperimentConfig,
    GeneratorKind, NamedImage, Pattern,
};
use geofill::strategy::{
    next_source_extrema, next_source_filling_rate, spiral_turns, ExtremaContext, SpiralState,
    DEFAULT_REPULSION,
};
use geofill::{
    boundary_pixels, run_strategy, run_strategy_with, DistanceArray, Image, Metric, PixelId, Rate,
    RunOptions, StrategyKind, DEFAULT_MAX_PIXELS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn image(pattern: Pattern, side: usize, seed: u64) -> Image {
    generate_image(&GeneratorKind::new(pattern, side, side, seed)).unwrap()
}

#[test]
fn every_strategy_and_metric_matches_oracle() {
    for pattern in [Pattern::Bumps, Pattern::HairpinBend, Pattern::Random] {
        let img = image(pattern, 9, 4);
        for metric in Metric::ALL {
            let oracle = brute_force_oracle(&img, metric, DEFAULT_MAX_PIXELS).unwrap();
            for kind in StrategyKind::all(DEFAULT_REPULSION) {
                for seed in 0..3 {
                    let run = run_strategy(&img, metric, kind, seed).unwrap();
                    assert_eq!(
                        first_mismatch(&oracle, &run.distances),
                        None,
                        "{pattern} {metric} {kind}"
                    );
                }
            }
        }
    }
}

#[test]
fn naive_with_tree_is_exact_and_no_slower() {
    let img = image(Pattern::Bumps, 10, 1);
    let oracle = brute_force_oracle(&img, Metric::Sum, DEFAULT_MAX_PIXELS).unwrap();
    let opts = RunOptions {
        naive_with_tree: true,
        ..RunOptions::default()
    };
    let run = run_strategy_with(&img, Metric::Sum, StrategyKind::Naive, 0, &opts).unwrap();
    assert_eq!(first_mismatch(&oracle, &run.distances), None);
    assert!(run.trace.raw_count <= 99);
}

#[test]
fn trace_is_consistent_with_final_array() {
    let img = image(Pattern::Random, 8, 3);
    for kind in StrategyKind::all(2) {
        let run = run_strategy(&img, Metric::Sum, kind, 5).unwrap();
        let t = &run.trace;
        assert_eq!(t.samples.len(), t.raw_count);
        assert_eq!(t.adjusted_count, t.raw_count + kind.overhead());
        for (k, s) in t.samples.iter().enumerate() {
            assert_eq!(s.propagation_index, k + 1);
            assert_eq!(
                s.tau,
                Rate::new(s.filled_pairs, run.distances.total_pairs())
            );
        }
        let sources: std::collections::HashSet<_> = t.samples.iter().map(|s| s.source).collect();
        assert_eq!(sources.len(), t.samples.len(), "{kind} repeated a source");
        assert!(run.distances.is_full());
    }
}

#[test]
fn runs_are_reproducible_per_seed() {
    let img = image(Pattern::Bumps, 12, 8);
    for kind in [StrategyKind::Spiral, StrategyKind::SpiralRepulsion { h: 3 }] {
        let a = run_strategy(&img, Metric::Sum, kind, 42).unwrap();
        let b = run_strategy(&img, Metric::Sum, kind, 42).unwrap();
        assert_eq!(a.trace, b.trace);
    }
}

#[test]
fn spiral_draws_outer_turn_first() {
    let img = image(Pattern::Random, 9, 2);
    let turns = spiral_turns(img.dims());
    assert_eq!(turns.len(), 5);
    assert_eq!(turns[0].len(), 32);
    assert_eq!(turns[4], vec![PixelId(40)]);
    let outer: std::collections::HashSet<_> = turns[0].iter().copied().collect();
    let store = DistanceArray::new(81).unwrap();
    let mut state = SpiralState::new(img.dims());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..10 {
        let p = state.next_source(&store, &mut rng).unwrap();
        assert!(outer.contains(&p));
        assert_eq!(state.current_turn(), 0);
    }
    assert_eq!(state.candidates().len(), 22);
}

#[test]
fn repulsion_removes_neighbors() {
    let img = image(Pattern::Random, 9, 2);
    let store = DistanceArray::new(81).unwrap();
    let mut state = SpiralState::with_repulsion(img.dims(), 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    state.next_source(&store, &mut rng).unwrap();
    assert_eq!(state.candidates().len(), 32 - 5);
    assert!(SpiralState::with_repulsion(img.dims(), 0).is_err());
}

#[test]
fn extrema_selectors_on_fresh_array() {
    let img = image(Pattern::Bumps, 11, 6);
    let ctx = ExtremaContext::compute(&img, Metric::Sum).unwrap();
    let store = DistanceArray::new(img.len()).unwrap();
    assert_eq!(next_source_extrema(&store, &ctx).unwrap(), ctx.ext[0]);
    assert_eq!(next_source_filling_rate(&store, &ctx).unwrap(), ctx.ext[0]);
    let c = ctx.dist_from_boundary[ctx.centroid.0];
    assert!(ctx.dist_from_boundary.iter().all(|&d| d <= c));
    assert!(ctx
        .ext
        .windows(2)
        .all(|w| ctx.dist_from_centroid[w[0].0] >= ctx.dist_from_centroid[w[1].0]));
}

#[test]
fn geodesic_extrema_head_on_border_for_bumps() {
    let mut on_border = 0;
    for seed in 0..30 {
        let img = image(Pattern::Bumps, 25, seed);
        let ctx = ExtremaContext::compute(&img, Metric::Sum).unwrap();
        if boundary_pixels(img.dims()).contains(&ctx.ext[0]) {
            on_border += 1;
        }
    }
    assert!(
        on_border >= 27,
        "only {on_border}/30 extrema heads on the border"
    );
}

#[test]
fn filling_rate_beats_spiral_on_structured_images() {
    for pattern in [Pattern::Bumps, Pattern::HairpinBend] {
        let config = ExperimentConfig {
            images: vec![NamedImage::new("img", image(pattern, 20, 11))],
            metrics: vec![Metric::Sum],
            strategies: vec![StrategyKind::Spiral, StrategyKind::FillingRate],
            seeds: (0..10).collect(),
            options: RunOptions::default(),
            verify: false,
        };
        let report = run_experiment(&config).unwrap();
        let spiral = report.summary("img", StrategyKind::Spiral).unwrap();
        let fr = report.summary("img", StrategyKind::FillingRate).unwrap();
        assert!(fr.adjusted_mean < spiral.adjusted_mean, "{pattern}");
        assert!(spiral.raw_mean < 399.0);
    }
}
