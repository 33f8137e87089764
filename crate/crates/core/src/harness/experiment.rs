//! Strategy comparison over images, metrics and seeds.

use std::collections::HashMap;

use rayon::prelude::*;

use super::oracle::{brute_force_oracle, first_mismatch};
use crate::error::{Error, Result};
use crate::grid::{Dims, Image, Metric};
use crate::store::DistanceArray;
use crate::strategy::{
    relative_difference, run_strategy_with, FillingTrace, RunOptions, StrategyKind,
};

#[derive(Clone, Debug)]
pub struct NamedImage {
    pub name: String,
    pub image: Image,
}

impl NamedImage {
    pub fn new(name: impl Into<String>, image: Image) -> Self {
        Self {
            name: name.into(),
            image,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub images: Vec<NamedImage>,
    pub metrics: Vec<Metric>,
    pub strategies: Vec<StrategyKind>,
    pub seeds: Vec<u64>,
    pub options: RunOptions,
    /// Check every completed array against the brute-force oracle.
    pub verify: bool,
}

/// Trace of one (image, metric, strategy, seed) run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    /// Image name, suffixed with `@metric` when several metrics are compared.
    pub image: String,
    pub dims: Dims,
    pub metric: Metric,
    pub strategy: StrategyKind,
    pub seed: u64,
    pub trace: FillingTrace,
}

/// Aggregated counts for one strategy on one image and metric.
#[derive(Clone, Debug, PartialEq)]
pub struct StrategySummary {
    pub image: String,
    pub metric: Metric,
    pub strategy: StrategyKind,
    pub runs: usize,
    pub raw_mean: f64,
    pub raw_min: usize,
    pub raw_max: usize,
    pub adjusted_mean: f64,
    pub adjusted_min: usize,
    pub adjusted_max: usize,
    /// Reduction of the mean adjusted count against the naive one, in percent.
    pub delta_r_naive: Option<f64>,
    /// Same against the spiral method.
    pub delta_r_spiral: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub summaries: Vec<StrategySummary>,
    pub runs: Vec<RunRecord>,
    /// One completed array per (image label, metric), in run order.
    pub matrices: Vec<(String, Metric, DistanceArray)>,
}

impl ExperimentReport {
    pub fn summary(&self, image: &str, strategy: StrategyKind) -> Option<&StrategySummary> {
        self.summaries
            .iter()
            .find(|s| s.image == image && s.strategy == strategy)
    }
}

fn image_label(name: &str, metric: Metric, several_metrics: bool) -> String {
    if several_metrics {
        format!("{name}@{metric}")
    } else {
        name.to_string()
    }
}

/// Runs every combination, optionally verifying each completed array
/// against the oracle, and aggregates counts with Δ_r against the naive and
/// spiral baselines. Runs execute in parallel; results keep the order
/// images → metrics → strategies → seeds.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    if config.images.is_empty() {
        return Err(Error::EmptyParameterSet("images"));
    }
    if config.metrics.is_empty() {
        return Err(Error::EmptyParameterSet("metrics"));
    }
    if config.strategies.is_empty() {
        return Err(Error::EmptyParameterSet("strategies"));
    }
    if config.seeds.is_empty() {
        return Err(Error::EmptyParameterSet("seeds"));
    }
    let several_metrics = config.metrics.len() > 1;

    let groups: Vec<(usize, Metric)> = (0..config.images.len())
        .flat_map(|i| config.metrics.iter().map(move |&m| (i, m)))
        .collect();
    let oracles: Vec<Option<DistanceArray>> = groups
        .par_iter()
        .map(|&(i, metric)| {
            config
                .verify
                .then(|| {
                    brute_force_oracle(&config.images[i].image, metric, config.options.max_pixels)
                })
                .transpose()
        })
        .collect::<Result<_>>()?;

    struct Job {
        group: usize,
        strategy: StrategyKind,
        seed: u64,
        keep_matrix: bool,
    }
    let mut jobs = Vec::new();
    for group in 0..groups.len() {
        for (si, &strategy) in config.strategies.iter().enumerate() {
            for (ki, &seed) in config.seeds.iter().enumerate() {
                jobs.push(Job {
                    group,
                    strategy,
                    seed,
                    keep_matrix: si == 0 && ki == 0,
                });
            }
        }
    }

    let outcomes: Vec<(RunRecord, Option<DistanceArray>)> = jobs
        .par_iter()
        .map(|job| {
            let (i, metric) = groups[job.group];
            let named = &config.images[i];
            let label = image_label(&named.name, metric, several_metrics);
            let run = run_strategy_with(
                &named.image,
                metric,
                job.strategy,
                job.seed,
                &config.options,
            )?;
            if let Some(oracle) = &oracles[job.group] {
                if let Some(detail) = first_mismatch(oracle, &run.distances) {
                    return Err(Error::OracleMismatch {
                        image: label,
                        metric: metric.to_string(),
                        strategy: job.strategy.to_string(),
                        seed: job.seed,
                        detail,
                    });
                }
            }
            let record = RunRecord {
                image: label,
                dims: named.image.dims(),
                metric,
                strategy: job.strategy,
                seed: job.seed,
                trace: run.trace,
            };
            Ok((record, job.keep_matrix.then_some(run.distances)))
        })
        .collect::<Result<_>>()?;

    let mut runs = Vec::with_capacity(outcomes.len());
    let mut matrices = Vec::new();
    for (record, matrix) in outcomes {
        if let Some(m) = matrix {
            matrices.push((record.image.clone(), record.metric, m));
        }
        runs.push(record);
    }
    let summaries = summarize(&runs)?;
    Ok(ExperimentReport {
        summaries,
        runs,
        matrices,
    })
}

/// Aggregates runs per (image, metric, strategy), keeping first-seen order.
pub fn summarize(runs: &[RunRecord]) -> Result<Vec<StrategySummary>> {
    let mut order: Vec<(String, Metric, StrategyKind)> = Vec::new();
    let mut grouped: HashMap<(String, Metric, StrategyKind), Vec<&FillingTrace>> = HashMap::new();
    for r in runs {
        let key = (r.image.clone(), r.metric, r.strategy);
        grouped
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(&r.trace);
    }

    let mut summaries: Vec<StrategySummary> = order
        .into_iter()
        .map(|key| {
            let traces = &grouped[&key];
            let raw: Vec<usize> = traces.iter().map(|t| t.raw_count).collect();
            let adj: Vec<usize> = traces.iter().map(|t| t.adjusted_count).collect();
            let mean = |v: &[usize]| v.iter().sum::<usize>() as f64 / v.len() as f64;
            StrategySummary {
                image: key.0,
                metric: key.1,
                strategy: key.2,
                runs: traces.len(),
                raw_mean: mean(&raw),
                raw_min: *raw.iter().min().unwrap(),
                raw_max: *raw.iter().max().unwrap(),
                adjusted_mean: mean(&adj),
                adjusted_min: *adj.iter().min().unwrap(),
                adjusted_max: *adj.iter().max().unwrap(),
                delta_r_naive: None,
                delta_r_spiral: None,
            }
        })
        .collect();

    let baseline =
        |summaries: &[StrategySummary], image: &str, metric: Metric, kind: StrategyKind| {
            summaries
                .iter()
                .find(|s| s.image == image && s.metric == metric && s.strategy == kind)
                .map(|s| s.adjusted_mean)
        };
    for i in 0..summaries.len() {
        let (image, metric) = (summaries[i].image.clone(), summaries[i].metric);
        let method = summaries[i].adjusted_mean;
        let naive = baseline(&summaries, &image, metric, StrategyKind::Naive);
        let spiral = baseline(&summaries, &image, metric, StrategyKind::Spiral);
        summaries[i].delta_r_naive = naive.map(|b| relative_difference(b, method)).transpose()?;
        summaries[i].delta_r_spiral = spiral.map(|b| relative_difference(b, method)).transpose()?;
    }
    Ok(summaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{generate_image, GeneratorKind, Pattern};
    use crate::strategy::DEFAULT_REPULSION;

    fn config(strategies: Vec<StrategyKind>, seeds: Vec<u64>) -> ExperimentConfig {
        let image = generate_image(&GeneratorKind::new(Pattern::Bumps, 8, 8, 1)).unwrap();
        ExperimentConfig {
            images: vec![NamedImage::new("bumps", image)],
            metrics: vec![Metric::Sum],
            strategies,
            seeds,
            options: RunOptions::default(),
            verify: true,
        }
    }

    #[test]
    fn report_rows_and_deltas() {
        let cfg = config(
            StrategyKind::all(DEFAULT_REPULSION).to_vec(),
            (0..4).collect(),
        );
        let report = run_experiment(&cfg).unwrap();
        assert_eq!(report.runs.len(), 20);
        assert_eq!(report.summaries.len(), 5);
        assert_eq!(report.matrices.len(), 1);
        let naive = report.summary("bumps", StrategyKind::Naive).unwrap();
        assert_eq!(naive.raw_mean, 63.0);
        assert_eq!(naive.delta_r_naive, Some(0.0));
        let spiral = report.summary("bumps", StrategyKind::Spiral).unwrap();
        assert_eq!(spiral.delta_r_spiral, Some(0.0));
        for s in &report.summaries {
            assert_eq!(s.runs, 4);
            assert!(s.raw_min as f64 <= s.raw_mean && s.raw_mean <= s.raw_max as f64);
            let want = relative_difference(naive.adjusted_mean, s.adjusted_mean).unwrap();
            assert_eq!(s.delta_r_naive, Some(want));
            let want = relative_difference(spiral.adjusted_mean, s.adjusted_mean).unwrap();
            assert_eq!(s.delta_r_spiral, Some(want));
        }
    }

    #[test]
    fn naive_only_report() {
        let report = run_experiment(&config(vec![StrategyKind::Naive], vec![0])).unwrap();
        assert_eq!(report.summaries.len(), 1);
        assert_eq!(report.summaries[0].delta_r_naive, Some(0.0));
        assert_eq!(report.summaries[0].delta_r_spiral, None);
    }

    #[test]
    fn empty_parameters_rejected() {
        assert!(matches!(
            run_experiment(&config(vec![], vec![0])),
            Err(Error::EmptyParameterSet("strategies"))
        ));
        assert!(matches!(
            run_experiment(&config(vec![StrategyKind::Naive], vec![])),
            Err(Error::EmptyParameterSet("seeds"))
        ));
    }

    #[test]
    fn multi_metric_labels() {
        let mut cfg = config(vec![StrategyKind::FillingRate], vec![0]);
        cfg.metrics = vec![Metric::Sum, Metric::Mean];
        let report = run_experiment(&cfg).unwrap();
        let labels: Vec<_> = report.runs.iter().map(|r| r.image.as_str()).collect();
        assert_eq!(labels, vec!["bumps@sum", "bumps@mean"]);
        assert_eq!(report.matrices.len(), 2);
    }

    #[test]
    fn runs_are_ordered() {
        let cfg = config(
            vec![StrategyKind::Spiral, StrategyKind::Naive],
            vec![3, 1, 2],
        );
        let report = run_experiment(&cfg).unwrap();
        let keys: Vec<_> = report
            .runs
            .iter()
            .map(|r| (r.strategy.name(), r.seed))
            .collect();
        assert_eq!(
            keys,
            vec![
                ("spiral", 3),
                ("spiral", 1),
                ("spiral", 2),
                ("naive", 3),
                ("naive", 1),
                ("naive", 2)
            ]
        );
    }
}
