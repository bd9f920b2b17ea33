//! Experiment orchestration behind the `lrap` binary.

mod config;
mod output;
mod parse;
mod run;
mod tables;

pub use config::{ExperimentConfig, InitPolicy, ProblemConfig};
pub use output::{format_float, read_trace_csv, trace_csv, TRACE_HEADER};
pub use parse::{parse_size, parse_spec_label};
pub use run::{mean_trace, run_experiment, worker_count, Summary, TrialResult};
pub use tables::{export_spectrum, preset_table, print_flop_table};
