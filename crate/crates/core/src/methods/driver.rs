use super::steps::step_projected;
use super::{IterateState, Method, MethodSpec};
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LowRankFactors};
use crate::metrics::IterationRecord;
use crate::projection::project_box;
use crate::sketch::sub_seed;

/// Seed of iteration `iteration` (1-based; 0 is the initialization) on
/// attempt `attempt` of a run with `master` seed.
pub fn iteration_seed(master: u64, iteration: usize, attempt: u64) -> u64 {
    sub_seed(sub_seed(master, iteration as u64), attempt)
}

/// Dense views handed to the per-iteration callback.
#[derive(Debug, Clone, Copy)]
pub struct IterationView<'a> {
    /// The new low-rank iterate `Y⁽ⁱ⁾`, densified.
    pub iterate: &'a DenseMatrix,
    /// `clip(Y⁽ⁱ⁾)`, the input of the next iteration.
    pub projected: &'a DenseMatrix,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub factors: LowRankFactors,
    /// Metrics of the starting point `y0`.
    pub initial: IterationRecord,
    /// One record per iteration, in order.
    pub trace: Vec<IterationRecord>,
    /// Number of iterations that had to redraw their sketch.
    pub retries: usize,
}

/// Runs `spec.iterations` iterations from `y0`, measuring every iterate
/// against `target`.
///
/// A sketch collapse is retried once with a fresh seed; a second collapse
/// in the same iteration is returned as the error.
pub fn run_method<F>(
    y0: &LowRankFactors,
    spec: &MethodSpec,
    target: &DenseMatrix,
    master_seed: u64,
    mut on_iteration: F,
) -> Result<RunOutput>
where
    F: FnMut(&IterationRecord, IterationView<'_>),
{
    let (m, n) = y0.shape();
    spec.validate_shape(m, n)?;
    if target.shape() != (m, n) {
        return Err(Error::Dimension(format!(
            "target {}x{} against a {m}x{n} iterate",
            target.rows(),
            target.cols()
        )));
    }
    if y0.rank() > spec.rank {
        return Err(Error::InvalidParameter(format!(
            "starting factors have width {} above rank {}",
            y0.rank(),
            spec.rank
        )));
    }

    let dense = y0.reconstruct();
    let initial = IterationRecord::measure(0, target, &dense, spec.bounds)?;
    let factors = match (spec.method, &y0.sigma) {
        (Method::Tangent, None) => y0.to_svd_form()?,
        _ => y0.clone(),
    };
    let mut state = IterateState::new(factors);
    let mut x = project_box(&dense, spec.bounds);
    drop(dense);

    let mut trace = Vec::with_capacity(spec.iterations);
    let mut retries = 0;
    for i in 1..=spec.iterations {
        state = match step_projected(&state, &x, spec, iteration_seed(master_seed, i, 0)) {
            Err(e) if e.is_retryable() => {
                retries += 1;
                step_projected(&state, &x, spec, iteration_seed(master_seed, i, 1))?
            }
            other => other?,
        };
        let dense = state.factors.reconstruct();
        let record = IterationRecord::measure(i, target, &dense, spec.bounds)?;
        x = project_box(&dense, spec.bounds);
        on_iteration(
            &record,
            IterationView {
                iterate: &dense,
                projected: &x,
            },
        );
        trace.push(record);
    }
    Ok(RunOutput {
        factors: state.factors,
        initial,
        trace,
        retries,
    })
}
