//! Benchmark harness: test images, PGM input, the brute-force oracle,
//! multi-run experiments and their CSV outputs.

pub mod experiment;
pub mod generate;
pub mod oracle;
pub mod output;
pub mod pgm;

pub use experiment::{
    run_experiment, summarize, ExperimentConfig, ExperimentReport, NamedImage, RunRecord,
    StrategySummary,
};
pub use generate::{generate_image, hairpin_corridor, GeneratorKind, Pattern};
pub use oracle::{brute_force_oracle, first_mismatch};
pub use output::{format_tau, write_report_csv, write_trace_csv};
pub use pgm::{read_pgm, write_pgm, PgmEncoding, PgmOptions};
