use serde::{Deserialize, Serialize};

use super::bessel::bessel_i0_log;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Constant coagulation kernel `K`, exponential initial data with rates
/// `a`, `b`, evaluated at time `t` on the grid `v_i = offset + i·h`,
/// `i = 0..nodes`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoluchowskiSpec {
    pub kernel: f64,
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub h: f64,
    pub nodes: usize,
    #[serde(default)]
    pub offset: f64,
}

impl Default for SmoluchowskiSpec {
    fn default() -> Self {
        Self {
            kernel: 100.0,
            a: 1.0,
            b: 1.0,
            t: 6.0,
            h: 0.1,
            nodes: 1024,
            offset: 0.0,
        }
    }
}

impl SmoluchowskiSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = [("kernel", self.kernel), ("a", self.a), ("b", self.b), ("h", self.h)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        if !(self.t >= 0.0 && self.t.is_finite()) {
            return Err(Error::InvalidParameter(format!("t = {} must be >= 0", self.t)));
        }
        if !(self.offset >= 0.0 && self.offset.is_finite()) {
            return Err(Error::InvalidParameter(format!("offset = {} must be >= 0", self.offset)));
        }
        if self.nodes == 0 {
            return Err(Error::InvalidParameter("need at least one grid node".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.nodes).map(|i| self.offset + i as f64 * self.h).collect()
    }

    fn log_prefactor(&self) -> f64 {
        let sk = self.kernel.sqrt();
        sk.ln() + (self.a * self.b).ln() - 2.0 * (1.0 + 0.5 * sk * self.t).ln()
    }

    fn bessel_scale(&self) -> f64 {
        let skt = self.kernel.sqrt() * self.t;
        self.a * self.b * skt / (skt + 2.0)
    }

    fn log_density(&self, v1: f64, v2: f64) -> Result<f64> {
        let z = 2.0 * (self.bessel_scale() * v1 * v2).sqrt();
        Ok(self.log_prefactor() - self.a * v1 - self.b * v2 + bessel_i0_log(z)?)
    }
}

/// Number density `n(v₁, v₂, t)`.
pub fn smoluchowski_density(spec: &SmoluchowskiSpec, v1: f64, v2: f64) -> Result<f64> {
    spec.validate()?;
    Ok(spec.log_density(v1, v2)?.exp())
}

/// Mass concentration `m = (v₁ + v₂)·n` on the `nodes×nodes` grid, with
/// rows indexed by `v₁`.
pub fn smoluchowski_solution(spec: &SmoluchowskiSpec) -> Result<DenseMatrix> {
    spec.validate()?;
    let grid = spec.grid();
    let mut out = DenseMatrix::zeros(spec.nodes, spec.nodes);
    for (i, &v1) in grid.iter().enumerate() {
        let row = out.row_mut(i);
        for (j, &v2) in grid.iter().enumerate() {
            let mass = v1 + v2;
            row[j] = if mass == 0.0 {
                0.0
            } else {
                mass * spec.log_density(v1, v2)?.exp()
            };
        }
    }
    if !out.is_finite() {
        return Err(Error::NonFinite("smoluchowski solution"));
    }
    Ok(out)
}
