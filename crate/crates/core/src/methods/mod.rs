//! Alternating projections between a box and the rank-`r` matrices.
//!
//! Every method keeps its iterate factored. One iteration densifies the
//! iterate, clips it into the box and maps the clipped matrix back to rank
//! `r` with the method's (exact or sketched) projection.

mod driver;
mod steps;
mod tangent;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::LowRankFactors;
use crate::projection::BoxBounds;
use crate::sketch::SketchKind;

pub use driver::{iteration_seed, run_method, IterationView, RunOutput};
pub use steps::{
    ap_gn_step, ap_hmt_step, ap_svd_step, ap_tangent_step, ap_tropp_step, initialize, step,
};
pub use tangent::{tangent_projection, TangentProjection};

/// How the SVD method computes its truncated SVD.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SvdDriver {
    /// Full bidiagonalization SVD, then truncation.
    #[default]
    Dense,
    /// Block subspace iteration warm-started from the previous right
    /// factor; for large matrices with a fast-decaying spectrum.
    Subspace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    Svd {
        #[serde(default)]
        driver: SvdDriver,
    },
    Tangent,
    Hmt {
        #[serde(default)]
        p: usize,
        k: usize,
    },
    Tropp {
        k: usize,
        l: usize,
    },
    Gn {
        l: usize,
    },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Svd { .. } => "SVD",
            Method::Tangent => "Tangent",
            Method::Hmt { .. } => "HMT",
            Method::Tropp { .. } => "Tropp",
            Method::Gn { .. } => "GN",
        }
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, Method::Hmt { .. } | Method::Tropp { .. } | Method::Gn { .. })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Svd { .. } | Method::Tangent => f.write_str(self.name()),
            Method::Hmt { p, k } => write!(f, "HMT({p}, {k})"),
            Method::Tropp { k, l } => write!(f, "Tropp({k}, {l})"),
            Method::Gn { l } => write!(f, "GN({l})"),
        }
    }
}

fn default_bounds() -> BoxBounds {
    BoxBounds::nonnegative()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodSpec {
    #[serde(flatten)]
    pub method: Method,
    pub rank: usize,
    #[serde(default)]
    pub iterations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sketch: Option<SketchKind>,
    #[serde(default = "default_bounds")]
    pub bounds: BoxBounds,
}

impl MethodSpec {
    fn plain(method: Method, rank: usize, sketch: Option<SketchKind>) -> Self {
        Self {
            method,
            rank,
            iterations: 0,
            sketch,
            bounds: BoxBounds::nonnegative(),
        }
    }

    pub fn svd(rank: usize) -> Self {
        Self::plain(
            Method::Svd {
                driver: SvdDriver::Dense,
            },
            rank,
            None,
        )
    }

    pub fn tangent(rank: usize) -> Self {
        Self::plain(Method::Tangent, rank, None)
    }

    pub fn hmt(rank: usize, p: usize, k: usize, sketch: SketchKind) -> Self {
        Self::plain(Method::Hmt { p, k }, rank, Some(sketch))
    }

    pub fn tropp(rank: usize, k: usize, l: usize, sketch: SketchKind) -> Self {
        Self::plain(Method::Tropp { k, l }, rank, Some(sketch))
    }

    pub fn gn(rank: usize, l: usize, sketch: SketchKind) -> Self {
        Self::plain(Method::Gn { l }, rank, Some(sketch))
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_bounds(mut self, bounds: BoxBounds) -> Self {
        self.bounds = bounds;
        self
    }

    /// Table label such as `HMT(0, 70) Rad(0.2)`.
    pub fn label(&self) -> String {
        match self.sketch {
            Some(s) => format!("{} {}", self.method, s.label()),
            None => self.method.to_string(),
        }
    }

    /// Checks the parameter relations that do not depend on the matrix.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.rank == 0 {
            return bad("rank must be at least 1".into());
        }
        self.bounds.validate()?;
        let r = self.rank;
        match self.method {
            Method::Hmt { k, .. } if k < r => return bad(format!("HMT needs k >= r, got k={k}, r={r}")),
            Method::Tropp { k, .. } if k < r => {
                return bad(format!("Tropp needs k >= r, got k={k}, r={r}"))
            }
            Method::Tropp { k, l } if l < k => {
                return bad(format!("Tropp needs l >= k, got k={k}, l={l}"))
            }
            Method::Gn { l } if l < r => return bad(format!("GN needs l >= r, got l={l}, r={r}")),
            _ => {}
        }
        match (self.method.is_randomized(), self.sketch) {
            (true, None) => bad(format!("{} needs a sketch", self.method.name())),
            (false, Some(_)) => bad(format!("{} takes no sketch", self.method.name())),
            (true, Some(kind)) => kind.validate(),
            (false, None) => Ok(()),
        }
    }

    /// [`validate`](Self::validate) plus the size limits of an `m×n` target.
    pub fn validate_shape(&self, m: usize, n: usize) -> Result<()> {
        self.validate()?;
        let max = m.min(n);
        if self.rank > max {
            return Err(Error::RankOutOfRange {
                rank: self.rank,
                max,
            });
        }
        match self.method {
            Method::Hmt { k, .. } | Method::Tropp { k, .. } if k > max => {
                Err(Error::InvalidParameter(format!(
                    "sketch size k={k} exceeds min(m, n)={max}"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// Iterate `Y⁽ⁱ⁾` together with its iteration index.
#[derive(Debug, Clone, PartialEq)]
pub struct IterateState {
    pub factors: LowRankFactors,
    pub iteration: usize,
}

impl IterateState {
    pub fn new(factors: LowRankFactors) -> Self {
        Self {
            factors,
            iteration: 0,
        }
    }
}
