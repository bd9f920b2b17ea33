//! Householder reflectors `H = I - tau v vᵀ` with `v[0] = 1`, applied to
//! row-major storage.

/// Turns `x` into the reflector vector in place and returns `(tau, beta)`
/// such that `H x = beta e₁`.
///
/// When the tail of `x` is already zero the reflection is the identity
/// (`tau = 0`), which also covers an all-zero column.
pub(crate) fn make_reflector(x: &mut [f64]) -> (f64, f64) {
    let alpha = x[0];
    let tail_norm = norm(&x[1..]);
    x[0] = 1.0;
    if tail_norm == 0.0 {
        return (0.0, alpha);
    }
    let beta = -alpha.signum() * alpha.hypot(tail_norm);
    let tau = (beta - alpha) / beta;
    let inv = 1.0 / (alpha - beta);
    x[1..].iter_mut().for_each(|v| *v *= inv);
    (tau, beta)
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    // scaled to stay clear of overflow for large entries
    let scale = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let inv = 1.0 / scale;
    scale * x.iter().map(|v| (v * inv) * (v * inv)).sum::<f64>().sqrt()
}

/// Applies `H` from the left to the block `rows r0.., cols c0..c1` of a
/// row-major matrix with `stride` columns. `v.len()` rows are touched.
#[allow(clippy::too_many_arguments)]
pub(crate) fn apply_left(
    data: &mut [f64],
    stride: usize,
    r0: usize,
    c0: usize,
    c1: usize,
    v: &[f64],
    tau: f64,
    work: &mut Vec<f64>,
) {
    if tau == 0.0 || c0 >= c1 {
        return;
    }
    let width = c1 - c0;
    work.clear();
    work.resize(width, 0.0);
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0.0 {
            continue;
        }
        let start = (r0 + i) * stride + c0;
        let row = &data[start..start + width];
        for (w, x) in work.iter_mut().zip(row) {
            *w += vi * x;
        }
    }
    for (i, &vi) in v.iter().enumerate() {
        let f = tau * vi;
        if f == 0.0 {
            continue;
        }
        let start = (r0 + i) * stride + c0;
        let row = &mut data[start..start + width];
        for (x, w) in row.iter_mut().zip(work.iter()) {
            *x -= f * w;
        }
    }
}

/// Applies `H` from the right to the block `rows r0..r1, cols c0..` of a
/// row-major matrix with `stride` columns. `v.len()` columns are touched.
pub(crate) fn apply_right(
    data: &mut [f64],
    stride: usize,
    r0: usize,
    r1: usize,
    c0: usize,
    v: &[f64],
    tau: f64,
) {
    if tau == 0.0 {
        return;
    }
    let width = v.len();
    for i in r0..r1 {
        let start = i * stride + c0;
        let row = &mut data[start..start + width];
        let s: f64 = row.iter().zip(v).map(|(x, y)| x * y).sum();
        let f = tau * s;
        if f == 0.0 {
            continue;
        }
        for (x, y) in row.iter_mut().zip(v) {
            *x -= f * y;
        }
    }
}
