use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use geofill::harness::{
    generate_image, read_pgm, run_experiment, write_pgm, write_report_csv, write_trace_csv,
    ExperimentConfig, ExperimentReport, GeneratorKind, NamedImage, Pattern, PgmEncoding,
    PgmOptions,
};
use geofill::strategy::DEFAULT_REPULSION;
use geofill::{Error, Metric, RunOptions, StrategyKind, DEFAULT_MAX_PIXELS};

/// Fill the all-pairs geodesic distance array of a grayscale image and
/// compare source-selection strategies by propagation count.
#[derive(Parser, Debug)]
#[command(name = "geofill", version)]
#[command(group(ArgGroup::new("input").required(true).args(["image", "generate"])))]
struct Cli {
    /// 8-bit PGM image (P2 or P5).
    #[arg(long, value_name = "PATH")]
    image: Option<PathBuf>,

    /// Generate a synthetic image instead of reading one.
    #[arg(long, value_name = "PATTERN")]
    generate: Option<Pattern>,

    /// Size of the generated image.
    #[arg(long, value_name = "WxH", default_value = "25x25", value_parser = parse_size)]
    size: (usize, usize),

    /// Seed of the generated image.
    #[arg(long, value_name = "K", default_value_t = 0)]
    image_seed: u64,

    #[arg(long, default_value_t = Metric::Sum)]
    metric: Metric,

    /// One strategy, or `all`.
    #[arg(long, default_value = "all")]
    strategy: String,

    /// Repulsion distance of spiral-repulsion, in pixels.
    #[arg(long, value_name = "H", default_value_t = DEFAULT_REPULSION)]
    repulsion: usize,

    /// Run seeds: `A..B` (B excluded), `A..=B`, or a single `K`.
    #[arg(long, value_name = "RANGE", default_value = "0..10", value_parser = parse_seeds)]
    seeds: SeedList,

    /// Let the naive baseline fill from its geodesic trees.
    #[arg(long)]
    naive_with_tree: bool,

    /// Read grey level 0 as 1 instead of rejecting the image.
    #[arg(long)]
    remap_zero: bool,

    #[arg(long, value_name = "FILE")]
    out_traces: Option<PathBuf>,

    #[arg(long, value_name = "FILE")]
    out_report: Option<PathBuf>,

    /// Completed array of the first run, in APGD format.
    #[arg(long, value_name = "FILE")]
    out_matrix: Option<PathBuf>,

    /// Write the input image as binary PGM.
    #[arg(long, value_name = "FILE")]
    out_image: Option<PathBuf>,

    /// Check every completed array against the brute-force oracle.
    #[arg(long)]
    verify: bool,

    /// Lift the limit on image size.
    #[arg(long)]
    force_size: bool,
}

#[derive(Clone, Debug)]
struct SeedList(Vec<u64>);

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected WxH, got `{s}`"))?;
    let w = w
        .trim()
        .parse()
        .map_err(|_| format!("bad width in `{s}`"))?;
    let h = h
        .trim()
        .parse()
        .map_err(|_| format!("bad height in `{s}`"))?;
    Ok((w, h))
}

fn parse_seeds(s: &str) -> Result<SeedList, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("bad seed `{t}`"))
    };
    let seeds: Vec<u64> = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?..num(b)?).collect()
    } else {
        vec![num(s)?]
    };
    if seeds.is_empty() {
        return Err(format!("seed range `{s}` is empty"));
    }
    Ok(SeedList(seeds))
}

fn strategies(name: &str, h: usize) -> Result<Vec<StrategyKind>, String> {
    if name == "all" {
        return Ok(StrategyKind::all(h).to_vec());
    }
    let kind = match name.parse::<StrategyKind>()? {
        StrategyKind::SpiralRepulsion { .. } => StrategyKind::SpiralRepulsion { h },
        k => k,
    };
    Ok(vec![kind])
}

fn load_image(cli: &Cli) -> geofill::Result<NamedImage> {
    if let Some(path) = &cli.image {
        let bytes = fs::read(path)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        let image = read_pgm(
            &bytes,
            PgmOptions {
                remap_zero: cli.remap_zero,
            },
        )?;
        let name = path
            .file_stem()
            .map_or_else(|| "image".to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(NamedImage::new(name, image));
    }
    let pattern = cli.generate.expect("clap enforces one input");
    let (w, h) = cli.size;
    let image = generate_image(&GeneratorKind::new(pattern, w, h, cli.image_seed))?;
    Ok(NamedImage::new(
        format!("{pattern}-{w}x{h}-s{}", cli.image_seed),
        image,
    ))
}

fn write_file(path: &Path, bytes: &[u8]) -> geofill::Result<()> {
    fs::write(path, bytes).map_err(Error::from)
}

fn print_report(report: &ExperimentReport) {
    println!(
        "{:<24} {:<18} {:>5} {:>10} {:>10} {:>10} {:>10}",
        "image", "strategy", "runs", "raw", "adjusted", "dr_naive%", "dr_spiral%"
    );
    let pct = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.2}"));
    for s in &report.summaries {
        println!(
            "{:<24} {:<18} {:>5} {:>10.2} {:>10.2} {:>10} {:>10}",
            s.image,
            s.strategy.to_string(),
            s.runs,
            s.raw_mean,
            s.adjusted_mean,
            pct(s.delta_r_naive),
            pct(s.delta_r_spiral)
        );
    }
}

fn run(cli: &Cli, kinds: Vec<StrategyKind>) -> geofill::Result<()> {
    let named = load_image(cli)?;
    if let Some(path) = &cli.out_image {
        write_file(path, &write_pgm(&named.image, PgmEncoding::Binary))?;
    }
    let config = ExperimentConfig {
        images: vec![named],
        metrics: vec![cli.metric],
        strategies: kinds,
        seeds: cli.seeds.0.clone(),
        options: RunOptions {
            naive_with_tree: cli.naive_with_tree,
            max_pixels: if cli.force_size {
                usize::MAX
            } else {
                DEFAULT_MAX_PIXELS
            },
        },
        verify: cli.verify,
    };
    let report = run_experiment(&config)?;
    if let Some(path) = &cli.out_traces {
        write_file(path, &write_trace_csv(&report.runs)?)?;
    }
    if let Some(path) = &cli.out_report {
        write_file(path, &write_report_csv(&report.summaries)?)?;
    }
    if let Some(path) = &cli.out_matrix {
        let (_, _, matrix) = &report.matrices[0];
        write_file(path, &matrix.to_apgd_bytes())?;
    }
    print_report(&report);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let kinds = match strategies(&cli.strategy, cli.repulsion) {
        Ok(k) => k,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, kinds) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::OracleMismatch { .. }) => {
            eprintln!("verification failed: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
