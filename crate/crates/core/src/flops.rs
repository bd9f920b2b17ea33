//! Analytic flop counts for the factorizations, the sketches and one
//! iteration of each method. Everything is evaluated from closed-form
//! expressions; nothing is instrumented at run time.
//!
//! Per-iteration formulas assume a tall matrix. Wide problems are counted
//! as their transpose.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::methods::{Method, MethodSpec};
use crate::sketch::SketchKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvdVariant {
    /// `14 mn² + 8 n³`
    General,
    /// `6 mn² + 20 n³`, for `m ≫ n`
    Tall,
    /// `21 m³`
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlopReport {
    pub init_flops: f64,
    pub per_iteration_flops: f64,
    /// `None` for the SVD method, whose cost is not linear in `mn`.
    pub dominant_mn_coefficient: Option<f64>,
}

fn tall(m: usize, n: usize) -> (f64, f64) {
    let (a, b) = if m >= n { (m, n) } else { (n, m) };
    (a as f64, b as f64)
}

/// Householder thin QR with `Q` formed: `4mn² − 4n³/3`.
pub fn flops_qr(m: usize, n: usize) -> Result<f64> {
    if m < n || n == 0 {
        return Err(Error::Dimension(format!("QR cost needs m >= n >= 1, got {m}x{n}")));
    }
    let (m, n) = (m as f64, n as f64);
    Ok(4.0 * m * n * n - 4.0 / 3.0 * n * n * n)
}

pub fn flops_svd(m: usize, n: usize, variant: SvdVariant) -> Result<f64> {
    if m < n || n == 0 {
        return Err(Error::Dimension(format!("SVD cost needs m >= n >= 1, got {m}x{n}")));
    }
    let (mf, nf) = (m as f64, n as f64);
    match variant {
        SvdVariant::General => Ok(14.0 * mf * nf * nf + 8.0 * nf.powi(3)),
        SvdVariant::Tall => Ok(6.0 * mf * nf * nf + 20.0 * nf.powi(3)),
        SvdVariant::Square if m == n => Ok(21.0 * mf.powi(3)),
        SvdVariant::Square => Err(Error::InvalidParameter(format!(
            "square SVD cost requested for {m}x{n}"
        ))),
    }
}

/// Cost of sampling a `rows×cols` test matrix.
pub fn flops_sketch_gen(kind: SketchKind, rows: usize, cols: usize) -> Result<f64> {
    kind.validate()?;
    let size = rows as f64 * cols as f64;
    Ok(match kind {
        SketchKind::Gaussian => 75.0 * size,
        SketchKind::Rademacher => size,
        SketchKind::SparseRademacher { density } => (1.0 + density) * size,
    })
}

/// Cost of applying a `rows×cols` test matrix to `k` vectors.
pub fn flops_sketch_apply(kind: SketchKind, rows: usize, cols: usize, k: usize) -> Result<f64> {
    kind.validate()?;
    let size = rows as f64 * cols as f64 * k as f64;
    Ok(match kind {
        SketchKind::Gaussian => 2.0 * size,
        SketchKind::Rademacher => size,
        SketchKind::SparseRademacher { density } => density * size,
    })
}

fn sketch_of(spec: &MethodSpec) -> Result<SketchKind> {
    let kind = spec.sketch.ok_or_else(|| {
        Error::InvalidParameter(format!("{} needs a sketch kind", spec.method.name()))
    })?;
    kind.validate()?;
    Ok(kind)
}

fn no_sketch(spec: &MethodSpec) -> Result<()> {
    match spec.sketch {
        None => Ok(()),
        Some(_) => Err(Error::InvalidParameter(format!(
            "{} takes no sketch",
            spec.method.name()
        ))),
    }
}

/// Flops of one iteration of `spec` on an `m×n` matrix.
pub fn flops_per_iteration(spec: &MethodSpec, m: usize, n: usize) -> Result<f64> {
    spec.validate_shape(m, n)?;
    let (m, n) = tall(m, n);
    let r = spec.rank as f64;
    match spec.method {
        Method::Svd { .. } => {
            no_sketch(spec)?;
            let variant = if m == n {
                SvdVariant::Square
            } else {
                SvdVariant::General
            };
            Ok(flops_svd(m as usize, n as usize, variant)? + 2.0 * m * n * r + n * r)
        }
        Method::Tangent => {
            no_sketch(spec)?;
            Ok(6.0 * m * n * r
                + 10.0 * m * r * r
                + 12.0 * n * r * r
                + n * r
                + (165.0 + 1.0 / 3.0) * r.powi(3))
        }
        Method::Hmt { p, k } => {
            let (p, k) = (p as f64, k as f64);
            let (lead, gen) = match sketch_of(spec)? {
                SketchKind::Gaussian => (4.0 * p + 4.0, 75.0 * n * k),
                SketchKind::Rademacher => (4.0 * p + 3.0, n * k),
                SketchKind::SparseRademacher { density } => {
                    (4.0 * p + 2.0 + density, (1.0 + density) * n * k)
                }
            };
            Ok(lead * m * n * k
                + 2.0 * m * n * r
                + (4.0 * p + 6.0) * (m + n) * k * k
                + n * r
                + gen
                + 8.0 / 3.0 * (7.0 - p) * k.powi(3))
        }
        Method::Tropp { k, l } => {
            let (k, l) = (k as f64, l as f64);
            let (mn_coef, mkl, gen) = match sketch_of(spec)? {
                SketchKind::Gaussian => (2.0 * (r + k + l), 2.0, 75.0),
                SketchKind::Rademacher => (2.0 * r + k + l, 1.0, 1.0),
                SketchKind::SparseRademacher { density: rho } => {
                    (2.0 * r + rho * (k + l), rho, 1.0 + rho)
                }
            };
            Ok(mn_coef * m * n
                + mkl * m * k * l
                + 5.0 * m * k * k
                + 7.0 * n * k * k
                + 2.0 * n * k * l
                + gen * (n * k + m * l)
                + n * r
                + (17.0 + 1.0 / 3.0) * k.powi(3)
                + 4.0 * l * k * k)
        }
        Method::Gn { l } => {
            let l = l as f64;
            let (mn_coef, nlr, gen) = match sketch_of(spec)? {
                SketchKind::Gaussian => (4.0 * r + 2.0 * l, 4.0, 75.0),
                SketchKind::Rademacher => (3.0 * r + l, 3.0, 1.0),
                SketchKind::SparseRademacher { density: rho } => {
                    (2.0 * r + rho * r + rho * l, 2.0 + rho, 1.0 + rho)
                }
            };
            Ok(mn_coef * m * n
                + nlr * n * l * r
                + m * r * r
                + gen * (n * r + m * l)
                + 4.0 * l * r * r
                - 4.0 / 3.0 * r.powi(3))
        }
    }
}

/// Flops of computing the starting approximation from the full matrix.
///
/// SVD and Tangent start from a truncated SVD, counted as the SVD alone.
/// The randomized methods apply their own estimator once, which is one
/// iteration without the `2mnr` densification of the previous iterate.
pub fn flops_init(spec: &MethodSpec, m: usize, n: usize) -> Result<f64> {
    spec.validate_shape(m, n)?;
    let (mt, nt) = if m >= n { (m, n) } else { (n, m) };
    match spec.method {
        Method::Svd { .. } | Method::Tangent => {
            no_sketch(spec)?;
            let variant = if m == n {
                SvdVariant::Square
            } else {
                SvdVariant::General
            };
            flops_svd(mt, nt, variant)
        }
        _ => Ok(flops_per_iteration(spec, m, n)? - 2.0 * mt as f64 * nt as f64 * spec.rank as f64),
    }
}

/// Leading `mn` coefficient of the per-iteration cost.
pub fn dominant_coefficient(spec: &MethodSpec) -> Result<f64> {
    let r = spec.rank as f64;
    match spec.method {
        Method::Svd { .. } => Err(Error::InvalidParameter(
            "the SVD method has no cost linear in mn".into(),
        )),
        Method::Tangent => {
            no_sketch(spec)?;
            Ok(6.0 * r)
        }
        Method::Hmt { p, k } => {
            let (p, k) = (p as f64, k as f64);
            Ok(match sketch_of(spec)? {
                SketchKind::Gaussian => (4.0 * p + 4.0) * k + 2.0 * r,
                SketchKind::Rademacher => (4.0 * p + 3.0) * k + 2.0 * r,
                SketchKind::SparseRademacher { density } => (4.0 * p + 2.0 + density) * k + 2.0 * r,
            })
        }
        Method::Tropp { k, l } => {
            let (k, l) = (k as f64, l as f64);
            Ok(match sketch_of(spec)? {
                SketchKind::Gaussian => 2.0 * (r + k + l),
                SketchKind::Rademacher => 2.0 * r + k + l,
                SketchKind::SparseRademacher { density } => 2.0 * r + density * (k + l),
            })
        }
        Method::Gn { l } => {
            let l = l as f64;
            Ok(match sketch_of(spec)? {
                SketchKind::Gaussian => 4.0 * r + 2.0 * l,
                SketchKind::Rademacher => 3.0 * r + l,
                SketchKind::SparseRademacher { density } => (2.0 + density) * r + density * l,
            })
        }
    }
}

pub fn flop_report(spec: &MethodSpec, m: usize, n: usize) -> Result<FlopReport> {
    Ok(FlopReport {
        init_flops: flops_init(spec, m, n)?,
        per_iteration_flops: flops_per_iteration(spec, m, n)?,
        dominant_mn_coefficient: match spec.method {
            Method::Svd { .. } => None,
            _ => Some(dominant_coefficient(spec)?),
        },
    })
}

/// Rounds to `digits` significant figures.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let e = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits - 1 - e);
    (x * scale).round() / scale
}
