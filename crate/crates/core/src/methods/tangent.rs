use crate::error::{Error, Result};
use crate::linalg::{qr_thin, svd_truncated, DenseMatrix, LowRankFactors};

/// `Π_T(X) = left · core · rightᵀ` for the tangent space at `U Σ Vᵀ`,
/// with `left = [U Q₂]` and `right = [V Q₁]` of width `2r`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentProjection {
    pub left: DenseMatrix,
    pub core: DenseMatrix,
    pub right: DenseMatrix,
}

impl TangentProjection {
    pub fn reconstruct(&self) -> Result<DenseMatrix> {
        self.left.matmul(&self.core)?.matmul_t(&self.right)
    }

    /// Best rank-`r` approximation of the projection, from the `2r×2r` core.
    pub fn truncate(&self, r: usize) -> Result<LowRankFactors> {
        let small = svd_truncated(&self.core, r)?;
        Ok(LowRankFactors {
            u: self.left.matmul(&small.u)?,
            sigma: small.sigma,
            v: self.right.matmul(&small.v)?,
        })
    }
}

/// Projects `x` onto the tangent space of the rank-`r` manifold at the point
/// with orthonormal factors `u` (m×r) and `v` (n×r):
/// `U Uᵀ X + (I − U Uᵀ) X V Vᵀ`.
pub fn tangent_projection(
    u: &DenseMatrix,
    v: &DenseMatrix,
    x: &DenseMatrix,
) -> Result<TangentProjection> {
    let (m, n) = x.shape();
    let r = u.cols();
    if u.rows() != m || v.rows() != n || v.cols() != r {
        return Err(Error::Dimension(format!(
            "tangent factors {}x{} and {}x{} for a {m}x{n} matrix",
            u.rows(),
            r,
            v.rows(),
            v.cols()
        )));
    }
    if r > m.min(n) {
        return Err(Error::RankOutOfRange {
            rank: r,
            max: m.min(n),
        });
    }
    let g1 = u.t_matmul(x)?;
    let xv = x.matmul(v)?;
    let m_core = g1.matmul(v)?;

    // (I − V Vᵀ) G₁ᵀ and (I − U Uᵀ) X V
    let mut g1t_perp = g1.transpose();
    sub_assign(&mut g1t_perp, &v.matmul_t(&m_core)?);
    let (q1, r1) = qr_thin(&g1t_perp)?;

    let mut g2 = xv;
    sub_assign(&mut g2, &u.matmul(&m_core)?);
    let (q2, r2) = qr_thin(&g2)?;

    let mut core = DenseMatrix::zeros(2 * r, 2 * r);
    for i in 0..r {
        for j in 0..r {
            core[(i, j)] = m_core[(i, j)];
            core[(i, r + j)] = r1[(j, i)];
            core[(r + i, j)] = r2[(i, j)];
        }
    }
    Ok(TangentProjection {
        left: u.hstack(&q2)?,
        core,
        right: v.hstack(&q1)?,
    })
}

fn sub_assign(a: &mut DenseMatrix, b: &DenseMatrix) {
    for (x, y) in a.data_mut().iter_mut().zip(b.data()) {
        *x -= y;
    }
}
