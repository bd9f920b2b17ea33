//! Alternating projections for low-rank nonnegative matrix approximation.
//!
//! Given a nonnegative matrix (or a low-rank factorization that has picked up
//! negative entries) the methods here alternate between clipping onto a box
//! (usually the nonnegative orthant) and an exact or approximate projection
//! onto the set of rank-`r` matrices. Two deterministic projections (truncated
//! SVD and the tangent-space variant) and three sketching-based ones (HMT,
//! Tropp, generalized Nystrom) are provided, together with an analytic flop
//! model and the problem generators used by the benchmark harness.

pub mod error;
pub mod flops;
pub mod harness;
pub mod linalg;
pub mod methods;
pub mod metrics;
pub mod problems;
pub mod projection;
pub mod sketch;

pub use error::{Error, Result};
pub use linalg::{matmul, qr_thin, svd_truncated, DenseMatrix, LowRankFactors};
pub use methods::{run_method, Method, MethodSpec, RunOutput};
pub use metrics::IterationRecord;
pub use projection::{project_box, BoxBounds};
pub use sketch::{SketchKind, SketchSpec};
