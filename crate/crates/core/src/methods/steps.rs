use super::tangent::tangent_projection;
use super::{IterateState, Method, MethodSpec, SvdDriver};
use crate::error::{Error, Result};
use crate::linalg::{
    qr_thin, solve_upper, solve_upper_right, svd_truncated, svd_truncated_subspace, DenseMatrix,
    LowRankFactors,
};
use crate::projection::project_box;
use crate::sketch::{
    apply_sketch_left, apply_sketch_right, gen_test_matrix, sub_seed, SketchKind, SketchSpec,
    TestMatrix,
};

const SUBSPACE_TOL: f64 = 1e-12;
const SUBSPACE_MAX_SWEEPS: usize = 50;

fn expect(spec: &MethodSpec, want: &'static str) -> Result<()> {
    if spec.method.name() == want {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{} spec passed to the {want} step",
            spec.method.name()
        )))
    }
}

fn sketch_kind(spec: &MethodSpec) -> Result<SketchKind> {
    spec.sketch
        .ok_or_else(|| Error::InvalidParameter(format!("{} needs a sketch", spec.method.name())))
}

/// Ψ uses stream 0 and Φ stream 1 of the iteration seed.
fn draw(kind: SketchKind, seed: u64, stream: u64, rows: usize, cols: usize) -> Result<TestMatrix> {
    let spec = SketchSpec {
        kind,
        seed: sub_seed(seed, stream),
    };
    gen_test_matrix(&spec, rows, cols)
}

fn collapsed(r: &DenseMatrix) -> bool {
    (0..r.rows()).any(|i| r[(i, i)] == 0.0)
}

fn qr_checked(a: &DenseMatrix, what: &'static str) -> Result<(DenseMatrix, DenseMatrix)> {
    let (q, r) = qr_thin(a)?;
    if collapsed(&r) {
        return Err(Error::SketchCollapse(what));
    }
    Ok((q, r))
}

/// Exact truncated SVD of the clipped matrix.
fn svd_projection(
    x: &DenseMatrix,
    spec: &MethodSpec,
    driver: SvdDriver,
    warm: Option<&DenseMatrix>,
) -> Result<LowRankFactors> {
    match driver {
        SvdDriver::Dense => svd_truncated(x, spec.rank),
        SvdDriver::Subspace => {
            svd_truncated_subspace(x, spec.rank, warm, SUBSPACE_TOL, SUBSPACE_MAX_SWEEPS)
        }
    }
}

fn hmt_projection(x: &DenseMatrix, spec: &MethodSpec, p: usize, k: usize, seed: u64) -> Result<LowRankFactors> {
    let (_, n) = x.shape();
    let psi = draw(sketch_kind(spec)?, seed, 0, n, k)?;
    let (mut q, _) = qr_checked(&apply_sketch_right(x, &psi)?, "range sketch XΨ")?;
    for _ in 0..p {
        let (qt, _) = qr_checked(&x.t_matmul(&q)?, "power iteration on Xᵀ")?;
        (q, _) = qr_checked(&x.matmul(&qt)?, "power iteration on X")?;
    }
    let small = svd_truncated(&q.t_matmul(x)?, spec.rank)?;
    Ok(LowRankFactors {
        u: q.matmul(&small.u)?,
        sigma: small.sigma,
        v: small.v,
    })
}

fn tropp_projection(x: &DenseMatrix, spec: &MethodSpec, k: usize, l: usize, seed: u64) -> Result<LowRankFactors> {
    let (m, n) = x.shape();
    let kind = sketch_kind(spec)?;
    let psi = draw(kind, seed, 0, n, k)?;
    let phi = draw(kind, seed, 1, l, m)?;
    let (q, _) = qr_checked(&apply_sketch_right(x, &psi)?, "range sketch XΨ")?;
    let (p, t) = qr_checked(&apply_sketch_left(&phi, &q)?, "co-range sketch ΦQ")?;
    let phi_x = apply_sketch_left(&phi, x)?;
    let g = solve_upper(&t, &p.t_matmul(&phi_x)?)?;
    let small = svd_truncated(&g, spec.rank)?;
    Ok(LowRankFactors {
        u: q.matmul(&small.u)?,
        sigma: small.sigma,
        v: small.v,
    })
}

fn gn_projection(x: &DenseMatrix, spec: &MethodSpec, l: usize, seed: u64) -> Result<LowRankFactors> {
    let (m, n) = x.shape();
    let kind = sketch_kind(spec)?;
    let psi = draw(kind, seed, 0, n, spec.rank)?;
    let phi = draw(kind, seed, 1, l, m)?;
    let z = apply_sketch_right(x, &psi)?;
    let (q, r) = qr_checked(&apply_sketch_left(&phi, &z)?, "co-range sketch ΦXΨ")?;
    let v = apply_sketch_left(&phi, x)?.t_matmul(&q)?;
    let u = solve_upper_right(&z, &r)?;
    Ok(LowRankFactors { u, sigma: None, v })
}

/// One iteration applied to an already clipped matrix `x`.
pub(super) fn step_projected(
    state: &IterateState,
    x: &DenseMatrix,
    spec: &MethodSpec,
    seed: u64,
) -> Result<IterateState> {
    let factors = match spec.method {
        Method::Svd { driver } => svd_projection(x, spec, driver, Some(&state.factors.v))?,
        Method::Tangent => {
            let seeded;
            let f = match state.factors.sigma {
                Some(_) => &state.factors,
                None => {
                    seeded = state.factors.to_svd_form()?;
                    &seeded
                }
            };
            tangent_projection(&f.u, &f.v, x)?.truncate(spec.rank)?
        }
        Method::Hmt { p, k } => hmt_projection(x, spec, p, k, seed)?,
        Method::Tropp { k, l } => tropp_projection(x, spec, k, l, seed)?,
        Method::Gn { l } => gn_projection(x, spec, l, seed)?,
    };
    if !factors.u.is_finite() || !factors.v.is_finite() {
        return Err(Error::NonFinite("iterate factors"));
    }
    Ok(IterateState {
        factors,
        iteration: state.iteration + 1,
    })
}

/// Starting approximation of the full matrix `x`: the truncated SVD for the
/// deterministic methods, one application of the method's own estimator for
/// the randomized ones.
pub fn initialize(x: &DenseMatrix, spec: &MethodSpec, seed: u64) -> Result<LowRankFactors> {
    spec.validate_shape(x.rows(), x.cols())?;
    match spec.method {
        Method::Svd { driver } => svd_projection(x, spec, driver, None),
        Method::Tangent => svd_truncated(x, spec.rank),
        Method::Hmt { p, k } => hmt_projection(x, spec, p, k, seed),
        Method::Tropp { k, l } => tropp_projection(x, spec, k, l, seed),
        Method::Gn { l } => gn_projection(x, spec, l, seed),
    }
}

/// One iteration `Y ← P_r(clip(Y))` of whatever method `spec` selects.
pub fn step(state: &IterateState, spec: &MethodSpec, seed: u64) -> Result<IterateState> {
    let (m, n) = state.factors.shape();
    spec.validate_shape(m, n)?;
    let x = project_box(&state.factors.reconstruct(), spec.bounds);
    step_projected(state, &x, spec, seed)
}

/// SVD method: `Y ← SVD_r(clip(Y))`.
pub fn ap_svd_step(state: &IterateState, spec: &MethodSpec) -> Result<IterateState> {
    expect(spec, "SVD")?;
    step(state, spec, 0)
}

/// Tangent method. `state` must hold orthonormal `u`, `v` (as produced by
/// [`svd_truncated`] or by a previous tangent step).
pub fn ap_tangent_step(state: &IterateState, spec: &MethodSpec) -> Result<IterateState> {
    expect(spec, "Tangent")?;
    step(state, spec, 0)
}

pub fn ap_hmt_step(state: &IterateState, spec: &MethodSpec, iteration_seed: u64) -> Result<IterateState> {
    expect(spec, "HMT")?;
    step(state, spec, iteration_seed)
}

pub fn ap_tropp_step(state: &IterateState, spec: &MethodSpec, iteration_seed: u64) -> Result<IterateState> {
    expect(spec, "Tropp")?;
    step(state, spec, iteration_seed)
}

pub fn ap_gn_step(state: &IterateState, spec: &MethodSpec, iteration_seed: u64) -> Result<IterateState> {
    expect(spec, "GN")?;
    step(state, spec, iteration_seed)
}
