//! Golub–Kahan SVD: Householder bidiagonalization followed by implicitly
//! shifted QR sweeps on the bidiagonal.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::householder::{apply_left, apply_right, make_reflector};
use super::{qr_thin, DenseMatrix, LowRankFactors};
use crate::error::{Error, Result};

struct Bidiagonal {
    d: Vec<f64>,
    e: Vec<f64>,
    /// Left reflectors; reflector `j` acts on coordinates `j..m`.
    left: Vec<(Vec<f64>, f64)>,
    /// Right reflectors; reflector `j` acts on coordinates `j+1..n`.
    right: Vec<(Vec<f64>, f64)>,
}

/// `a = U_B · B · V_Bᵀ` with `B` upper bidiagonal. Requires `rows >= cols`.
fn bidiagonalize(a: &DenseMatrix) -> Bidiagonal {
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let mut w = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n.saturating_sub(2));
    let mut work = Vec::new();

    for j in 0..n {
        let mut v: Vec<f64> = (j..m).map(|i| w[(i, j)]).collect();
        let (tau, beta) = make_reflector(&mut v);
        d[j] = beta;
        apply_left(w.data_mut(), n, j, j + 1, n, &v, tau, &mut work);
        left.push((v, tau));

        if j + 1 < n {
            let mut v = w.row(j)[j + 1..].to_vec();
            let (tau, beta) = make_reflector(&mut v);
            e[j] = beta;
            apply_right(w.data_mut(), n, j + 1, m, j + 1, &v, tau);
            right.push((v, tau));
        }
    }
    Bidiagonal { d, e, left, right }
}

#[inline]
fn givens(f: f64, g: f64) -> (f64, f64, f64) {
    if g == 0.0 {
        (1.0, 0.0, f)
    } else if f == 0.0 {
        (0.0, 1.0, g)
    } else {
        let r = f.hypot(g);
        (f / r, g / r, r)
    }
}

/// `row_i ← c·row_i + s·row_k`, `row_k ← −s·row_i + c·row_k`.
#[inline]
fn rotate_rows(mat: &mut Option<&mut DenseMatrix>, i: usize, k: usize, c: f64, s: f64) {
    let Some(mat) = mat.as_deref_mut() else {
        return;
    };
    let n = mat.cols();
    let (lo, hi, swap) = if i < k { (i, k, false) } else { (k, i, true) };
    let (head, tail) = mat.data_mut().split_at_mut(hi * n);
    let a = &mut head[lo * n..(lo + 1) * n];
    let b = &mut tail[..n];
    let (ri, rk) = if swap { (b, a) } else { (a, b) };
    for (x, y) in ri.iter_mut().zip(rk.iter_mut()) {
        let xi = *x;
        let yk = *y;
        *x = c * xi + s * yk;
        *y = c * yk - s * xi;
    }
}

/// Diagonalizes the upper bidiagonal `(d, e)` in place.
///
/// Rotations acting on the left are accumulated into the rows of `ut`
/// (so row `i` of `ut` ends up as the i-th left singular vector of `B`),
/// and rotations acting on the right into the rows of `vt`.
fn bidiagonal_qr(
    d: &mut [f64],
    e: &mut [f64],
    mut ut: Option<&mut DenseMatrix>,
    mut vt: Option<&mut DenseMatrix>,
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let bnorm = d
        .iter()
        .chain(e.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    if bnorm == 0.0 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let tiny = eps * bnorm;
    let floor = eps * tiny;
    let max_steps = 60 * n + 200;
    let mut steps = 0usize;

    let mut hi = n - 1;
    while hi > 0 {
        for i in 0..hi {
            if e[i] != 0.0 && (e[i].abs() <= eps * (d[i].abs() + d[i + 1].abs()) || e[i].abs() <= floor) {
                e[i] = 0.0;
            }
        }
        if e[hi - 1] == 0.0 {
            hi -= 1;
            continue;
        }
        let mut lo = hi - 1;
        while lo > 0 && e[lo - 1] != 0.0 {
            lo -= 1;
        }

        // A zero on the diagonal lets the block split after a rotation chase.
        if let Some(i) = (lo..hi).find(|&i| d[i].abs() <= tiny) {
            d[i] = 0.0;
            let mut f = e[i];
            e[i] = 0.0;
            for j in i + 1..=hi {
                let (c, s, r) = givens(d[j], f);
                d[j] = r;
                rotate_rows(&mut ut, j, i, c, s);
                if j < hi {
                    f = -s * e[j];
                    e[j] *= c;
                }
            }
            continue;
        }
        if d[hi].abs() <= tiny {
            d[hi] = 0.0;
            let mut f = e[hi - 1];
            e[hi - 1] = 0.0;
            for j in (lo..hi).rev() {
                let (c, s, r) = givens(d[j], f);
                d[j] = r;
                rotate_rows(&mut vt, j, hi, c, s);
                if j > lo {
                    f = -s * e[j - 1];
                    e[j - 1] *= c;
                }
            }
            continue;
        }

        steps += 1;
        if steps > max_steps {
            return Err(Error::NoConvergence("bidiagonal QR"));
        }

        // Wilkinson shift from the trailing 2x2 of BᵀB restricted to the block.
        let t11 = d[hi - 1] * d[hi - 1] + if hi - 1 > lo { e[hi - 2] * e[hi - 2] } else { 0.0 };
        let t12 = d[hi - 1] * e[hi - 1];
        let t22 = d[hi] * d[hi] + e[hi - 1] * e[hi - 1];
        let delta = 0.5 * (t11 - t22);
        let shift = if delta == 0.0 {
            t22 - t12.abs()
        } else {
            t22 - t12 * t12 / (delta + delta.signum() * delta.hypot(t12))
        };

        let mut y = d[lo] * d[lo] - shift;
        let mut z = d[lo] * e[lo];
        for k in lo..hi {
            let (c, s, r) = givens(y, z);
            if k > lo {
                e[k - 1] = r;
            }
            let dk = c * d[k] + s * e[k];
            e[k] = c * e[k] - s * d[k];
            let bulge = s * d[k + 1];
            d[k + 1] *= c;
            rotate_rows(&mut vt, k, k + 1, c, s);

            let (c, s, r) = givens(dk, bulge);
            d[k] = r;
            let ek = c * e[k] + s * d[k + 1];
            d[k + 1] = c * d[k + 1] - s * e[k];
            e[k] = ek;
            rotate_rows(&mut ut, k, k + 1, c, s);
            if k + 1 < hi {
                z = s * e[k + 1];
                e[k + 1] *= c;
                y = e[k];
            }
        }
    }

    for i in 0..n {
        if d[i] < 0.0 {
            d[i] = -d[i];
            if let Some(vt) = vt.as_deref_mut() {
                vt.row_mut(i).iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    Ok(())
}

fn check_input(a: &DenseMatrix) -> Result<()> {
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("svd input"));
    }
    Ok(())
}

/// All `min(rows, cols)` singular values, nonincreasing.
pub fn singular_values(a: &DenseMatrix) -> Result<Vec<f64>> {
    check_input(a)?;
    let tall;
    let a = if a.rows() < a.cols() {
        tall = a.transpose();
        &tall
    } else {
        a
    };
    let Bidiagonal { mut d, mut e, .. } = bidiagonalize(a);
    bidiagonal_qr(&mut d, &mut e, None, None)?;
    d.sort_by(|x, y| y.total_cmp(x));
    Ok(d)
}

/// Best rank-`r` approximation `U_r Σ_r V_rᵀ` in any unitarily invariant norm.
pub fn svd_truncated(a: &DenseMatrix, r: usize) -> Result<LowRankFactors> {
    check_input(a)?;
    let (m, n) = a.shape();
    let max = m.min(n);
    if r == 0 || r > max {
        return Err(Error::RankOutOfRange { rank: r, max });
    }
    if m < n {
        let f = svd_tall(&a.transpose(), r)?;
        let LowRankFactors { u, sigma, v } = f;
        return Ok(LowRankFactors { u: v, sigma, v: u });
    }
    svd_tall(a, r)
}

fn svd_tall(a: &DenseMatrix, r: usize) -> Result<LowRankFactors> {
    let (m, n) = a.shape();
    let Bidiagonal {
        mut d,
        mut e,
        left,
        right,
    } = bidiagonalize(a);
    let mut ut = DenseMatrix::identity(n);
    let mut vt = DenseMatrix::identity(n);
    bidiagonal_qr(&mut d, &mut e, Some(&mut ut), Some(&mut vt))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].total_cmp(&d[i]).then(i.cmp(&j)));
    order.truncate(r);

    let mut u = DenseMatrix::zeros(m, r);
    let mut v = DenseMatrix::zeros(n, r);
    for (c, &idx) in order.iter().enumerate() {
        for (i, &x) in ut.row(idx).iter().enumerate() {
            u[(i, c)] = x;
        }
        for (i, &x) in vt.row(idx).iter().enumerate() {
            v[(i, c)] = x;
        }
    }
    let mut work = Vec::new();
    for (j, (h, tau)) in left.iter().enumerate().rev() {
        apply_left(u.data_mut(), r, j, 0, r, h, *tau, &mut work);
    }
    for (j, (h, tau)) in right.iter().enumerate().rev() {
        apply_left(v.data_mut(), r, j + 1, 0, r, h, *tau, &mut work);
    }
    let sigma = order.iter().map(|&i| d[i]).collect();
    Ok(LowRankFactors {
        u,
        sigma: Some(sigma),
        v,
    })
}

/// Rank-`r` truncated SVD by block subspace iteration, for matrices whose
/// spectrum has a clear gap after `r`.
///
/// `warm` (an `n×r'` matrix, typically the previous right factor) seeds the
/// block. Iteration stops once every Ritz triple satisfies
/// `‖a v_i − σ_i u_i‖ ≤ tol·σ_1`; if that does not happen within
/// `max_iter` sweeps the dense [`svd_truncated`] result is returned instead.
pub fn svd_truncated_subspace(
    a: &DenseMatrix,
    r: usize,
    warm: Option<&DenseMatrix>,
    tol: f64,
    max_iter: usize,
) -> Result<LowRankFactors> {
    check_input(a)?;
    let (m, n) = a.shape();
    let max = m.min(n);
    if r == 0 || r > max {
        return Err(Error::RankOutOfRange { rank: r, max });
    }
    let block = (2 * r).max(r + 10).min(max);
    if block == max {
        return svd_truncated(a, r);
    }

    let mut start = DenseMatrix::zeros(n, block);
    let mut filled = 0;
    if let Some(w) = warm.filter(|w| w.rows() == n) {
        filled = w.cols().min(block);
        for i in 0..n {
            start.row_mut(i)[..filled].copy_from_slice(&w.row(i)[..filled]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5b_d1e9);
    for i in 0..n {
        for x in &mut start.row_mut(i)[filled..] {
            *x = rng.gen::<f64>() - 0.5;
        }
    }
    let (mut basis, _) = qr_thin(&start)?;

    for _ in 0..max_iter {
        let (range, _) = qr_thin(&a.matmul(&basis)?)?;
        let small = svd_truncated(&range.t_matmul(a)?, block)?;
        let sigma = small.sigma.as_deref().unwrap_or_default();
        let u = range.matmul(&small.u.columns(0, r))?;
        let v = small.v.columns(0, r);
        let mut residual = a.matmul(&v)?;
        for i in 0..m {
            for (j, x) in residual.row_mut(i).iter_mut().enumerate() {
                *x -= u[(i, j)] * sigma[j];
            }
        }
        let worst = (0..r)
            .map(|j| residual.column(j).iter().map(|x| x * x).sum::<f64>().sqrt())
            .fold(0.0f64, f64::max);
        if worst <= tol * sigma[0] || sigma[0] == 0.0 {
            return Ok(LowRankFactors {
                u,
                sigma: Some(sigma[..r].to_vec()),
                v,
            });
        }
        basis = small.v;
    }
    svd_truncated(a, r)
}
