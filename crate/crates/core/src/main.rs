use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use lrap::harness::{
    export_spectrum, parse_size, parse_spec_label, preset_table, print_flop_table, run_experiment,
    ExperimentConfig, ProblemConfig,
};
use lrap::problems::SmoluchowskiSpec;

#[derive(Parser)]
#[command(name = "lrap", version, about = "Low-rank nonnegative approximation by alternating projections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON config.
    Run {
        config: PathBuf,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print per-iteration flop counts.
    Flops {
        /// Matrix size as MxN.
        #[arg(long)]
        size: Option<String>,
        #[arg(long, default_value_t = 64)]
        rank: usize,
        /// Method label, e.g. "HMT(0, 70) Rad(0.2)"; repeatable.
        #[arg(long = "spec")]
        specs: Vec<String>,
        /// Use a built-in experiment: uniform, image or smoluchowski.
        #[arg(long, conflicts_with_all = ["size", "specs"])]
        preset: Option<String>,
    },
    /// Write normalized singular values as CSV.
    Spectrum {
        /// uniform, smoluchowski, a .pgm image or a JSON problem file.
        problem: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Size for the uniform problem.
        #[arg(long, default_value = "256x256")]
        size: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn load_problem(problem: &str, size: &str, seed: u64) -> Result<ProblemConfig> {
    Ok(match problem {
        "uniform" => {
            let (m, n) = parse_size(size)?;
            ProblemConfig::Uniform { m, n, seed }
        }
        "smoluchowski" => ProblemConfig::Smoluchowski(SmoluchowskiSpec::default()),
        p if p.ends_with(".pgm") => ProblemConfig::Image { path: p.into() },
        p if p.ends_with(".json") => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {p}"))?;
            serde_json::from_str(&text).with_context(|| format!("parsing problem {p}"))?
        }
        other => bail!("unknown problem {other:?}"),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            config,
            trials,
            seed,
            iterations,
            output,
        } => {
            let text = std::fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = ExperimentConfig::from_json(&text)?;
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(i) = iterations {
                cfg.method.iterations = i;
            }
            if output.is_some() {
                cfg.output_dir = output;
            }
            let summary = run_experiment(&cfg)?;
            println!(
                "{}: rel_fro {:.3e} ± {:.1e}, rel_cheb {:.3e} ± {:.1e} over {} trials",
                summary.method,
                summary.rel_frobenius_mean,
                summary.rel_frobenius_std,
                summary.rel_chebyshev_mean,
                summary.rel_chebyshev_std,
                summary.trials
            );
        }
        Command::Flops {
            size,
            rank,
            specs,
            preset,
        } => {
            let (m, n, specs) = match preset {
                Some(name) => preset_table(&name)?,
                None => {
                    let (m, n) = parse_size(size.as_deref().unwrap_or("256x256"))?;
                    let specs = specs
                        .iter()
                        .map(|s| parse_spec_label(s, rank))
                        .collect::<lrap::Result<Vec<_>>>()?;
                    (m, n, specs)
                }
            };
            print!("{}", print_flop_table(m, n, &specs)?);
        }
        Command::Spectrum {
            problem,
            count,
            size,
            seed,
            output,
        } => {
            let target = load_problem(&problem, &size, seed)?.target(0)?;
            let csv = export_spectrum(&target, count)?;
            match output {
                Some(path) => std::fs::write(&path, csv)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
