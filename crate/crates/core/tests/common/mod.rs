#![allow(dead_code)]

use lrap::linalg::{singular_values, DenseMatrix, LowRankFactors};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
    let mut g = rng(seed);
    DenseMatrix::from_fn(rows, cols, |_, _| g.gen::<f64>() - 0.5)
}

/// `A Bᵀ` with `A`, `B` entrywise in `[0, 1)`, so the result is nonnegative
/// and of rank exactly `r` almost surely.
pub fn nonneg_rank(m: usize, n: usize, r: usize, seed: u64) -> DenseMatrix {
    let mut g = rng(seed);
    let a = DenseMatrix::from_fn(m, r, |_, _| g.gen::<f64>());
    let b = DenseMatrix::from_fn(n, r, |_, _| g.gen::<f64>());
    a.matmul_t(&b).unwrap()
}

pub fn rel_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm()
}

pub fn orth_defect(q: &DenseMatrix) -> f64 {
    q.t_matmul(q)
        .unwrap()
        .sub(&DenseMatrix::identity(q.cols()))
        .unwrap()
        .frobenius_norm()
}

/// `σ_{k+1} / σ_1` of the densified factors.
pub fn rank_ratio(y: &LowRankFactors, k: usize) -> f64 {
    let s = singular_values(&y.reconstruct()).unwrap();
    s.get(k).copied().unwrap_or(0.0) / s[0]
}
