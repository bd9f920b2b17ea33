//! Dense matrices and the two factorization kernels every method builds on.

mod householder;
mod lowrank;
mod matrix;
mod qr;
mod svd;

pub use lowrank::LowRankFactors;
pub use matrix::{matmul, DenseMatrix};
pub use qr::{qr_thin, solve_upper, solve_upper_right};
pub use svd::{singular_values, svd_truncated, svd_truncated_subspace};
