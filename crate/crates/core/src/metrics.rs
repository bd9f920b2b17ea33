//! Error and constraint-violation metrics recorded along a run.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{singular_values, DenseMatrix};
use crate::projection::BoxBounds;

/// Entries closer than this to a bound are treated as numerical noise.
pub const VIOLATION_THRESHOLD: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub rel_frobenius: f64,
    pub rel_chebyshev: f64,
    pub neg_frobenius: f64,
    pub neg_chebyshev: f64,
    pub neg_density: f64,
    pub over_frobenius: f64,
    pub over_chebyshev: f64,
    pub over_density: f64,
}

impl IterationRecord {
    /// Record for `approx` measured against `target`.
    pub fn measure(
        iteration: usize,
        target: &DenseMatrix,
        approx: &DenseMatrix,
        bounds: BoxBounds,
    ) -> Result<Self> {
        let (rel_frobenius, rel_chebyshev) = relative_errors(target, approx)?;
        let v = violation_stats(approx, bounds, VIOLATION_THRESHOLD);
        Ok(Self {
            iteration,
            rel_frobenius,
            rel_chebyshev,
            neg_frobenius: v.neg_frobenius,
            neg_chebyshev: v.neg_chebyshev,
            neg_density: v.neg_density,
            over_frobenius: v.over_frobenius,
            over_chebyshev: v.over_chebyshev,
            over_density: v.over_density,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ViolationStats {
    pub neg_frobenius: f64,
    pub neg_chebyshev: f64,
    pub neg_density: f64,
    pub over_frobenius: f64,
    pub over_chebyshev: f64,
    pub over_density: f64,
}

/// `(‖T − A‖_F / ‖T‖_F, max|T − A| / max|T|)`.
pub fn relative_errors(target: &DenseMatrix, approx: &DenseMatrix) -> Result<(f64, f64)> {
    target.check_same_shape(approx)?;
    let (mut diff2, mut diff_max) = (0.0f64, 0.0f64);
    for (t, a) in target.data().iter().zip(approx.data()) {
        let d = (t - a).abs();
        diff2 += d * d;
        diff_max = diff_max.max(d);
    }
    let (t_fro, t_max) = (target.frobenius_norm(), target.max_abs());
    if t_fro == 0.0 {
        return Err(Error::InvalidParameter("zero target matrix".into()));
    }
    Ok((diff2.sqrt() / t_fro, diff_max / t_max))
}

/// Norms and density of the entries lying more than `|threshold|` outside
/// the box, measured separately for each edge.
pub fn violation_stats(x: &DenseMatrix, b: BoxBounds, threshold: f64) -> ViolationStats {
    let tol = threshold.abs();
    let (lo, hi) = (b.lo - tol, b.hi + tol);
    let (mut n2, mut nmax, mut ncount) = (0.0f64, 0.0f64, 0usize);
    let (mut o2, mut omax, mut ocount) = (0.0f64, 0.0f64, 0usize);
    for &v in x.data() {
        if v < lo {
            let d = b.lo - v;
            n2 += d * d;
            nmax = nmax.max(d);
            ncount += 1;
        } else if v > hi {
            let d = v - b.hi;
            o2 += d * d;
            omax = omax.max(d);
            ocount += 1;
        }
    }
    let total = x.data().len().max(1) as f64;
    ViolationStats {
        neg_frobenius: n2.sqrt(),
        neg_chebyshev: nmax,
        neg_density: ncount as f64 / total,
        over_frobenius: o2.sqrt(),
        over_chebyshev: omax,
        over_density: ocount as f64 / total,
    }
}

/// Singular values divided by the largest one.
pub fn normalized_spectrum(x: &DenseMatrix) -> Result<Vec<f64>> {
    let s = singular_values(x)?;
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Err(Error::InvalidParameter("zero matrix has no normalized spectrum".into()));
    }
    Ok(s.into_iter().map(|v| v / top).collect())
}
