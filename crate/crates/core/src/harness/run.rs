use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use super::config::{ExperimentConfig, InitPolicy, ProblemConfig};
use super::output::trace_csv;
use crate::error::Result;
use crate::flops::{flop_report, flops_svd, SvdVariant};
use crate::linalg::{svd_truncated, DenseMatrix};
use crate::methods::{initialize, iteration_seed, run_method, MethodSpec};
use crate::metrics::IterationRecord;
use crate::sketch::sub_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    pub initial: IterationRecord,
    pub trace: Vec<IterationRecord>,
    pub retries: usize,
}

impl TrialResult {
    /// Last record, or the initial one for a zero-iteration run.
    pub fn last(&self) -> &IterationRecord {
        self.trace.last().unwrap_or(&self.initial)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub method: String,
    pub params: MethodSpec,
    pub problem: ProblemConfig,
    pub shape: (usize, usize),
    pub init: InitPolicy,
    pub init_flops: f64,
    pub per_iter_flops: f64,
    pub dominant_mn_coefficient: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    pub iterations: usize,
    pub initial_rel_frobenius_mean: f64,
    pub initial_rel_chebyshev_mean: f64,
    pub rel_frobenius_mean: f64,
    pub rel_frobenius_std: f64,
    pub rel_chebyshev_mean: f64,
    pub rel_chebyshev_std: f64,
    pub neg_frobenius_mean: f64,
    pub neg_density_mean: f64,
    pub over_frobenius_mean: f64,
    pub over_density_mean: f64,
    pub retries: usize,
    #[serde(skip)]
    pub trial_results: Vec<TrialResult>,
}

/// Worker threads for trials: `LRAP_WORKERS` if set, else the number of CPUs.
pub fn worker_count() -> usize {
    std::env::var("LRAP_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Row-wise arithmetic mean of equally long traces.
pub fn mean_trace(trials: &[TrialResult]) -> Vec<IterationRecord> {
    let Some(first) = trials.first() else {
        return Vec::new();
    };
    let count = trials.len() as f64;
    (0..first.trace.len())
        .map(|row| {
            let mut acc = IterationRecord {
                iteration: first.trace[row].iteration,
                ..Default::default()
            };
            for t in trials {
                let r = &t.trace[row];
                acc.rel_frobenius += r.rel_frobenius;
                acc.rel_chebyshev += r.rel_chebyshev;
                acc.neg_frobenius += r.neg_frobenius;
                acc.neg_chebyshev += r.neg_chebyshev;
                acc.neg_density += r.neg_density;
                acc.over_frobenius += r.over_frobenius;
                acc.over_chebyshev += r.over_chebyshev;
                acc.over_density += r.over_density;
            }
            acc.rel_frobenius /= count;
            acc.rel_chebyshev /= count;
            acc.neg_frobenius /= count;
            acc.neg_chebyshev /= count;
            acc.neg_density /= count;
            acc.over_frobenius /= count;
            acc.over_chebyshev /= count;
            acc.over_density /= count;
            acc
        })
        .collect()
}

fn run_trial(config: &ExperimentConfig, target: &DenseMatrix, trial: usize) -> Result<TrialResult> {
    let spec = &config.method;
    let seed = sub_seed(config.master_seed, trial as u64);
    let y0 = match config.init_policy() {
        InitPolicy::Svd => svd_truncated(target, spec.rank)?,
        InitPolicy::Method => initialize(target, spec, iteration_seed(seed, 0, 0))?,
    };
    let out = run_method(&y0, spec, target, seed, |_, _| {})?;
    Ok(TrialResult {
        trial,
        initial: out.initial,
        trace: out.trace,
        retries: out.retries,
    })
}

fn init_flops(config: &ExperimentConfig, m: usize, n: usize) -> Result<f64> {
    match config.init_policy() {
        InitPolicy::Svd => {
            let (a, b) = if m >= n { (m, n) } else { (n, m) };
            let variant = if m == n {
                SvdVariant::Square
            } else {
                SvdVariant::General
            };
            flops_svd(a, b, variant)
        }
        InitPolicy::Method => Ok(flop_report(&config.method, m, n)?.init_flops),
    }
}

/// Runs every trial of `config` and, when `output_dir` is set, writes
/// `trial_<i>.csv`, `mean.csv` and `summary.json` there.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Summary> {
    config.validate()?;
    let shared = if config.problem.is_fixed() {
        Some(config.problem.target(0)?)
    } else {
        None
    };
    let (m, n) = match (&shared, &config.problem) {
        (Some(t), _) => t.shape(),
        (None, ProblemConfig::Uniform { m, n, .. }) => (*m, *n),
        (None, _) => unreachable!("only uniform problems vary per trial"),
    };
    config.method.validate_shape(m, n)?;
    let report = flop_report(&config.method, m, n)?;

    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<TrialResult>>>> =
        (0..config.trials).map(|_| Mutex::new(None)).collect();
    let workers = worker_count().min(config.trials);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let trial = next.fetch_add(1, Ordering::Relaxed);
                if trial >= config.trials {
                    break;
                }
                let result = match &shared {
                    Some(target) => run_trial(config, target, trial),
                    None => config
                        .problem
                        .target(trial)
                        .and_then(|t| run_trial(config, &t, trial)),
                };
                *slots[trial].lock().expect("trial slot poisoned") = Some(result);
            });
        }
    });
    let trial_results: Vec<TrialResult> = slots
        .into_iter()
        .map(|s| s.into_inner().expect("trial slot poisoned").expect("every trial ran"))
        .collect::<Result<_>>()?;

    let last = |f: fn(&IterationRecord) -> f64| trial_results.iter().map(move |t| f(t.last()));
    let (rel_frobenius_mean, rel_frobenius_std) = mean_std(last(|r| r.rel_frobenius));
    let (rel_chebyshev_mean, rel_chebyshev_std) = mean_std(last(|r| r.rel_chebyshev));
    let summary = Summary {
        method: config.method.label(),
        params: config.method,
        problem: config.problem.clone(),
        shape: (m, n),
        init: config.init_policy(),
        init_flops: init_flops(config, m, n)?,
        per_iter_flops: report.per_iteration_flops,
        dominant_mn_coefficient: report.dominant_mn_coefficient,
        trials: config.trials,
        seed: config.master_seed,
        iterations: config.method.iterations,
        initial_rel_frobenius_mean: mean_std(trial_results.iter().map(|t| t.initial.rel_frobenius)).0,
        initial_rel_chebyshev_mean: mean_std(trial_results.iter().map(|t| t.initial.rel_chebyshev)).0,
        rel_frobenius_mean,
        rel_frobenius_std,
        rel_chebyshev_mean,
        rel_chebyshev_std,
        neg_frobenius_mean: mean_std(last(|r| r.neg_frobenius)).0,
        neg_density_mean: mean_std(last(|r| r.neg_density)).0,
        over_frobenius_mean: mean_std(last(|r| r.over_frobenius)).0,
        over_density_mean: mean_std(last(|r| r.over_density)).0,
        retries: trial_results.iter().map(|t| t.retries).sum(),
        trial_results,
    };
    if let Some(dir) = &config.output_dir {
        write_outputs(dir, &summary)?;
    }
    Ok(summary)
}

fn write_outputs(dir: &Path, summary: &Summary) -> Result<()> {
    fs::create_dir_all(dir)?;
    for t in &summary.trial_results {
        fs::write(dir.join(format!("trial_{}.csv", t.trial)), trace_csv(&t.trace))?;
    }
    fs::write(dir.join("mean.csv"), trace_csv(&mean_trace(&summary.trial_results)))?;
    let mut json = serde_json::to_string_pretty(summary)?;
    json.push('\n');
    fs::write(dir.join("summary.json"), json)?;
    Ok(())
}
