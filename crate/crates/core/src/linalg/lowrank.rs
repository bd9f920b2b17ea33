use super::{qr_thin, svd_truncated, DenseMatrix};
use crate::error::{Error, Result};

/// A rank-≤r matrix held as `u · diag(sigma) · vᵀ`, or `u · vᵀ` when
/// `sigma` is absent (the generalized Nystrom output).
#[derive(Debug, Clone, PartialEq)]
pub struct LowRankFactors {
    pub u: DenseMatrix,
    pub sigma: Option<Vec<f64>>,
    pub v: DenseMatrix,
}

impl LowRankFactors {
    pub fn new(u: DenseMatrix, sigma: Option<Vec<f64>>, v: DenseMatrix) -> Result<Self> {
        let width = u.cols();
        if v.cols() != width {
            return Err(Error::Dimension(format!(
                "factor widths {} and {}",
                width,
                v.cols()
            )));
        }
        if u.rows() < width || v.rows() < width {
            return Err(Error::Dimension(format!(
                "factors {}x{} and {}x{} are wider than tall",
                u.rows(),
                width,
                v.rows(),
                width
            )));
        }
        if let Some(s) = &sigma {
            if s.len() != width {
                return Err(Error::Dimension(format!(
                    "{} singular values for width {width}",
                    s.len()
                )));
            }
            if s.iter().any(|&x| !(x >= 0.0)) || s.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidParameter(
                    "singular values must be nonnegative and nonincreasing".into(),
                ));
            }
        }
        if !u.is_finite() || !v.is_finite() {
            return Err(Error::NonFinite("low-rank factors"));
        }
        Ok(Self { u, sigma, v })
    }

    /// Factored width (an upper bound on the rank).
    pub fn rank(&self) -> usize {
        self.u.cols()
    }

    /// Shape of the represented matrix.
    pub fn shape(&self) -> (usize, usize) {
        (self.u.rows(), self.v.rows())
    }

    pub fn reconstruct(&self) -> DenseMatrix {
        let left = match &self.sigma {
            Some(s) => {
                let mut us = self.u.clone();
                us.scale_columns(s);
                us
            }
            None => self.u.clone(),
        };
        left.matmul_t(&self.v).expect("factor widths checked on construction")
    }

    /// Rewrites the factorization as an SVD with orthonormal `u`, `v` and
    /// sorted `sigma`, without densifying: QR both factors, then take the SVD
    /// of the small core.
    pub fn to_svd_form(&self) -> Result<Self> {
        let (qu, ru) = qr_thin(&self.u)?;
        let (qv, rv) = qr_thin(&self.v)?;
        let mut core_left = ru;
        if let Some(s) = &self.sigma {
            core_left.scale_columns(s);
        }
        let core = core_left.matmul_t(&rv)?;
        let small = svd_truncated(&core, self.rank())?;
        Ok(Self {
            u: qu.matmul(&small.u)?,
            sigma: small.sigma,
            v: qv.matmul(&small.v)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_with_and_without_sigma() {
        let u = DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        let v = DenseMatrix::from_rows(&[[2.0, 0.0], [0.0, 3.0]]);
        let plain = LowRankFactors::new(u.clone(), None, v.clone()).unwrap();
        assert_eq!(plain.reconstruct().row(2), &[2.0, 3.0]);
        let scaled = LowRankFactors::new(u, Some(vec![2.0, 1.0]), v).unwrap();
        assert_eq!(scaled.reconstruct().row(2), &[4.0, 3.0]);
        assert_eq!(scaled.shape(), (3, 2));
    }

    #[test]
    fn rejects_bad_sigma() {
        let u = DenseMatrix::identity(2);
        let v = DenseMatrix::identity(2);
        assert!(LowRankFactors::new(u.clone(), Some(vec![1.0, 2.0]), v.clone()).is_err());
        assert!(LowRankFactors::new(u.clone(), Some(vec![1.0, -1.0]), v.clone()).is_err());
        assert!(LowRankFactors::new(u, Some(vec![1.0]), v).is_err());
    }

    #[test]
    fn svd_form_preserves_matrix() {
        let u = DenseMatrix::from_fn(9, 3, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let v = DenseMatrix::from_fn(6, 3, |i, j| ((i + 2 * j) % 4) as f64 - 1.5);
        let f = LowRankFactors::new(u, None, v).unwrap();
        let g = f.to_svd_form().unwrap();
        let diff = f.reconstruct().sub(&g.reconstruct()).unwrap().max_abs();
        assert!(diff < 1e-12);
        let qtq = g.u.t_matmul(&g.u).unwrap();
        assert!(qtq.sub(&DenseMatrix::identity(3)).unwrap().max_abs() < 1e-12);
    }
}
