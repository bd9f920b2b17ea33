//! Random test matrices for range/co-range sketches.
//!
//! All generation goes through a ChaCha8 stream seeded from a 64-bit value,
//! so a test matrix is a pure function of `(spec, rows, cols)`. Per-iteration
//! seeds are derived with [`sub_seed`] from a master seed, so any single
//! iteration of a run can be replayed in isolation.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SketchKind {
    Gaussian,
    Rademacher,
    SparseRademacher { density: f64 },
}

impl SketchKind {
    pub fn validate(&self) -> Result<()> {
        if let SketchKind::SparseRademacher { density } = *self {
            if !(density > 0.0 && density <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "sparse sketch density {density} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }

    /// Short label used in tables, e.g. `N(0,1)`, `Rad`, `Rad(0.2)`.
    pub fn label(&self) -> String {
        match self {
            SketchKind::Gaussian => "N(0,1)".into(),
            SketchKind::Rademacher => "Rad".into(),
            SketchKind::SparseRademacher { density } => format!("Rad({density})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SketchSpec {
    pub kind: SketchKind,
    pub seed: u64,
}

/// Sparse matrix with entries in `{+1, -1}`, stored in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<SignEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignEntry {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl SparseSignMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[SignEntry] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for e in &self.entries {
            d[(e.row, e.col)] = e.value;
        }
        d
    }

    /// Builds a matrix from explicit entries, rejecting duplicates and
    /// values other than ±1.
    pub fn from_entries(rows: usize, cols: usize, mut entries: Vec<SignEntry>) -> Result<Self> {
        entries.sort_by_key(|e| (e.row, e.col));
        for w in entries.windows(2) {
            if (w[0].row, w[0].col) == (w[1].row, w[1].col) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate sparse entry ({}, {})",
                    w[0].row, w[0].col
                )));
            }
        }
        for e in &entries {
            if e.row >= rows || e.col >= cols {
                return Err(Error::Dimension(format!(
                    "entry ({}, {}) outside {rows}x{cols}",
                    e.row, e.col
                )));
            }
            if e.value != 1.0 && e.value != -1.0 {
                return Err(Error::InvalidParameter(format!(
                    "sparse sign entry {} is not ±1",
                    e.value
                )));
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TestMatrix {
    Dense(DenseMatrix),
    Sparse(SparseSignMatrix),
}

impl TestMatrix {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            TestMatrix::Dense(d) => d.shape(),
            TestMatrix::Sparse(s) => (s.rows, s.cols),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            TestMatrix::Dense(d) => d.clone(),
            TestMatrix::Sparse(s) => s.to_dense(),
        }
    }
}

/// Box–Muller: two uniforms to two independent standard normals.
pub fn sample_gaussian_pair(u1: f64, u2: f64) -> Result<(f64, f64)> {
    if !(u1 > 0.0 && u1 <= 1.0) || !(0.0..1.0).contains(&u2) {
        return Err(Error::InvalidParameter(format!(
            "Box-Muller inputs ({u1}, {u2}) outside (0,1] x [0,1)"
        )));
    }
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * PI * u2;
    Ok((radius * angle.cos(), radius * angle.sin()))
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent seed for `(master, index)`. Used for per-trial,
/// per-iteration, per-retry and per-side (Ψ vs Φ) streams.
pub fn sub_seed(master: u64, index: u64) -> u64 {
    mix(mix(master) ^ mix(index.wrapping_add(0x632b_e59b_d9b4_e019)))
}

/// Uniform on (0, 1].
#[inline]
fn open_closed(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

pub fn gen_test_matrix(spec: &SketchSpec, rows: usize, cols: usize) -> Result<TestMatrix> {
    spec.kind.validate()?;
    if rows == 0 || cols == 0 {
        return Err(Error::Dimension(format!("empty test matrix {rows}x{cols}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let count = rows * cols;
    Ok(match spec.kind {
        SketchKind::Gaussian => {
            let mut data = Vec::with_capacity(count + 1);
            while data.len() < count {
                let u1 = open_closed(&mut rng);
                let u2 = rng.gen::<f64>();
                let (a, b) = sample_gaussian_pair(u1, u2)?;
                data.push(a);
                data.push(b);
            }
            data.truncate(count);
            TestMatrix::Dense(DenseMatrix::from_vec(rows, cols, data)?)
        }
        SketchKind::Rademacher => {
            let data = (0..count).map(|_| rademacher(&mut rng)).collect();
            TestMatrix::Dense(DenseMatrix::from_vec(rows, cols, data)?)
        }
        SketchKind::SparseRademacher { density } => {
            let mut entries = Vec::with_capacity((density * count as f64 * 1.1) as usize + 8);
            for row in 0..rows {
                for col in 0..cols {
                    if rng.gen::<f64>() < density {
                        entries.push(SignEntry {
                            row,
                            col,
                            value: rademacher(&mut rng),
                        });
                    }
                }
            }
            TestMatrix::Sparse(SparseSignMatrix {
                rows,
                cols,
                entries,
            })
        }
    })
}

#[inline]
fn rademacher(rng: &mut ChaCha8Rng) -> f64 {
    if rng.gen::<f64>() < 0.5 {
        1.0
    } else {
        -1.0
    }
}

/// `x · psi`.
pub fn apply_sketch_right(x: &DenseMatrix, psi: &TestMatrix) -> Result<DenseMatrix> {
    let (p_rows, p_cols) = psi.shape();
    if x.cols() != p_rows {
        return Err(Error::Dimension(format!(
            "{}x{} · {p_rows}x{p_cols}",
            x.rows(),
            x.cols()
        )));
    }
    match psi {
        TestMatrix::Dense(d) => x.matmul(d),
        TestMatrix::Sparse(s) => {
            let mut out = DenseMatrix::zeros(x.rows(), p_cols);
            for i in 0..x.rows() {
                let xr = x.row(i);
                let or = out.row_mut(i);
                for e in &s.entries {
                    or[e.col] += e.value * xr[e.row];
                }
            }
            Ok(out)
        }
    }
}

/// `phi · x`.
pub fn apply_sketch_left(phi: &TestMatrix, x: &DenseMatrix) -> Result<DenseMatrix> {
    let (p_rows, p_cols) = phi.shape();
    if p_cols != x.rows() {
        return Err(Error::Dimension(format!(
            "{p_rows}x{p_cols} · {}x{}",
            x.rows(),
            x.cols()
        )));
    }
    match phi {
        TestMatrix::Dense(d) => d.matmul(x),
        TestMatrix::Sparse(s) => {
            let n = x.cols();
            let mut out = DenseMatrix::zeros(p_rows, n);
            for e in &s.entries {
                let src = x.row(e.col);
                let dst = &mut out.data_mut()[e.row * n..(e.row + 1) * n];
                for (d, v) in dst.iter_mut().zip(src) {
                    *d += e.value * v;
                }
            }
            Ok(out)
        }
    }
}
