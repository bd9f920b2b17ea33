use super::householder::{apply_left, make_reflector};
use super::DenseMatrix;
use crate::error::{Error, Result};

/// Thin Householder QR of a tall matrix with `Q` formed explicitly.
///
/// `q` is `rows×cols` with orthonormal columns and `r` is `cols×cols` upper
/// triangular with a nonnegative diagonal. A column that is already zero
/// below the diagonal gets the identity reflection, so rank-deficient input
/// produces zeros on the diagonal of `r` rather than an error.
pub fn qr_thin(a: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    let (m, n) = a.shape();
    if m < n {
        return Err(Error::Dimension(format!(
            "thin QR needs rows >= cols, got {m}x{n}"
        )));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("qr_thin input"));
    }

    let mut w = a.clone();
    let mut reflectors: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n);
    let mut work = Vec::new();
    for j in 0..n {
        let mut v: Vec<f64> = (j..m).map(|i| w[(i, j)]).collect();
        let (tau, beta) = make_reflector(&mut v);
        w[(j, j)] = beta;
        for i in j + 1..m {
            w[(i, j)] = 0.0;
        }
        apply_left(w.data_mut(), n, j, j + 1, n, &v, tau, &mut work);
        reflectors.push((v, tau));
    }

    let mut r = DenseMatrix::zeros(n, n);
    for i in 0..n {
        r.row_mut(i)[i..].copy_from_slice(&w.row(i)[i..]);
    }

    // Q = H_0 ... H_{n-1} [I; 0], accumulated backwards so that each
    // reflector only touches the trailing columns.
    let mut q = DenseMatrix::zeros(m, n);
    for i in 0..n {
        q[(i, i)] = 1.0;
    }
    for (j, (v, tau)) in reflectors.iter().enumerate().rev() {
        apply_left(q.data_mut(), n, j, j, n, v, *tau, &mut work);
    }

    for j in 0..n {
        if r[(j, j)] < 0.0 {
            r.row_mut(j).iter_mut().for_each(|x| *x = -*x);
            for i in 0..m {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    Ok((q, r))
}

fn check_triangular(t: &DenseMatrix) -> Result<()> {
    if t.rows() != t.cols() {
        return Err(Error::Dimension(format!(
            "triangular factor must be square, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if (0..t.rows()).any(|i| t[(i, i)] == 0.0) {
        return Err(Error::SketchCollapse("singular triangular factor"));
    }
    Ok(())
}

/// Solves `t · x = b` for upper-triangular `t` by back substitution.
pub fn solve_upper(t: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    check_triangular(t)?;
    let k = t.rows();
    if b.rows() != k {
        return Err(Error::Dimension(format!(
            "{k}x{k} triangle against {} rows",
            b.rows()
        )));
    }
    let n = b.cols();
    let mut x = b.clone();
    for i in (0..k).rev() {
        for p in i + 1..k {
            let f = t[(i, p)];
            if f == 0.0 {
                continue;
            }
            let (head, tail) = x.data_mut().split_at_mut(p * n);
            let xi = &mut head[i * n..(i + 1) * n];
            let xp = &tail[..n];
            for (a, c) in xi.iter_mut().zip(xp) {
                *a -= f * c;
            }
        }
        let inv = 1.0 / t[(i, i)];
        x.row_mut(i).iter_mut().for_each(|v| *v *= inv);
    }
    check_solution(x)
}

/// Solves `x · t = b` for upper-triangular `t`, i.e. `x = b t⁻¹`.
pub fn solve_upper_right(b: &DenseMatrix, t: &DenseMatrix) -> Result<DenseMatrix> {
    check_triangular(t)?;
    let k = t.rows();
    if b.cols() != k {
        return Err(Error::Dimension(format!(
            "{} cols against a {k}x{k} triangle",
            b.cols()
        )));
    }
    let mut x = b.clone();
    for i in 0..x.rows() {
        let row = x.row_mut(i);
        for j in 0..k {
            let mut s = row[j];
            for p in 0..j {
                s -= row[p] * t[(p, j)];
            }
            row[j] = s / t[(j, j)];
        }
    }
    check_solution(x)
}

fn check_solution(x: DenseMatrix) -> Result<DenseMatrix> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::SketchCollapse("triangular solve overflowed"))
    }
}
