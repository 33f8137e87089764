//! CSV encodings of traces and reports.

use num_rational::Ratio;

use super::experiment::{RunRecord, StrategySummary};
use crate::error::Result;
use crate::store::Rate;

pub const TRACE_HEADER: [&str; 7] = [
    "image",
    "strategy",
    "seed",
    "propagation_index",
    "source_row",
    "source_col",
    "tau",
];

pub const REPORT_HEADER: [&str; 12] = [
    "image",
    "metric",
    "strategy",
    "runs",
    "raw_mean",
    "raw_min",
    "raw_max",
    "adjusted_mean",
    "adjusted_min",
    "adjusted_max",
    "delta_r_naive",
    "delta_r_spiral",
];

const TAU_SIGNIFICANT_DIGITS: usize = 12;

/// Decimal expansion of a rate in `[0, 1]`: `"1.0"` and `"0.0"` at the ends,
/// otherwise truncated (never rounded up) to 12 significant digits.
pub fn format_tau(tau: Rate) -> String {
    if tau >= Ratio::from_integer(1) {
        return "1.0".to_string();
    }
    let (mut num, den) = (u128::from(*tau.numer()), u128::from(*tau.denom()));
    if num == 0 {
        return "0.0".to_string();
    }
    let mut out = String::from("0.");
    let mut significant = 0;
    while significant < TAU_SIGNIFICANT_DIGITS {
        num *= 10;
        let digit = num / den;
        num %= den;
        if digit > 0 || significant > 0 {
            significant += 1;
        }
        out.push(char::from(b'0' + digit as u8));
    }
    out
}

/// One row per propagation, in the order of `runs`.
pub fn write_trace_csv(runs: &[RunRecord]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRACE_HEADER)?;
    for run in runs {
        let seed = run.seed.to_string();
        for s in &run.trace.samples {
            let (row, col) = run.dims.row_col(s.source);
            w.write_record([
                run.image.as_str(),
                run.strategy.name(),
                seed.as_str(),
                &s.propagation_index.to_string(),
                &row.to_string(),
                &col.to_string(),
                &format_tau(s.tau),
            ])?;
        }
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Aggregated counts and Δ_r (percent). Floats use shortest round-trip
/// formatting so Δ_r can be recomputed exactly from the stored means.
pub fn write_report_csv(summaries: &[StrategySummary]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_HEADER)?;
    for s in summaries {
        w.write_record([
            s.image.clone(),
            s.metric.to_string(),
            s.strategy.to_string(),
            s.runs.to_string(),
            s.raw_mean.to_string(),
            s.raw_min.to_string(),
            s.raw_max.to_string(),
            s.adjusted_mean.to_string(),
            s.adjusted_min.to_string(),
            s.adjusted_max.to_string(),
            opt(s.delta_r_naive),
            opt(s.delta_r_spiral),
        ])?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Dims, Metric, PixelId};
    use crate::strategy::{FillingTrace, StrategyKind, TraceSample};

    #[test]
    fn tau_formatting() {
        assert_eq!(format_tau(Rate::from_integer(1)), "1.0");
        assert_eq!(format_tau(Rate::from_integer(0)), "0.0");
        assert_eq!(format_tau(Rate::new(1, 2)), "0.500000000000");
        assert_eq!(format_tau(Rate::new(1, 3)), "0.333333333333");
        assert_eq!(format_tau(Rate::new(2, 3)), "0.666666666666");
        assert_eq!(format_tau(Rate::new(624, 195_000)), "0.00320000000000");
        // Just below one stays below one.
        assert_eq!(
            format_tau(Rate::new(194_999_999_999_999, 195_000_000_000_000)),
            "0.999999999999"
        );
    }

    #[test]
    fn empty_trace_csv_is_header_only() {
        let bytes = write_trace_csv(&[]).unwrap();
        assert_eq!(
            String::from_utf8(bytes).unwrap(),
            "image,strategy,seed,propagation_index,source_row,source_col,tau\n"
        );
    }

    #[test]
    fn two_propagation_trace() {
        let run = RunRecord {
            image: "tiny".into(),
            dims: Dims::new(2, 2).unwrap(),
            metric: Metric::Sum,
            strategy: StrategyKind::Spiral,
            seed: 9,
            trace: FillingTrace {
                samples: vec![
                    TraceSample {
                        propagation_index: 1,
                        source: PixelId(3),
                        filled_pairs: 4,
                        tau: Rate::new(4, 6),
                    },
                    TraceSample {
                        propagation_index: 2,
                        source: PixelId(0),
                        filled_pairs: 6,
                        tau: Rate::from_integer(1),
                    },
                ],
                raw_count: 2,
                adjusted_count: 2,
            },
        };
        let text = String::from_utf8(write_trace_csv(&[run]).unwrap()).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "tiny,spiral,9,1,1,1,0.666666666666");
        assert_eq!(lines[2], "tiny,spiral,9,2,0,0,1.0");
    }
}
