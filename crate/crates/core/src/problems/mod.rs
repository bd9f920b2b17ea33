//! Target matrices: iid uniform noise, grayscale images and the closed-form
//! solution of the two-component Smoluchowski coagulation equation.

mod bessel;
mod pgm;
mod smoluchowski;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::DenseMatrix;

pub use bessel::bessel_i0_log;
pub use pgm::{load_image_pgm, parse_pgm};
pub use smoluchowski::{smoluchowski_density, smoluchowski_solution, SmoluchowskiSpec};

/// `m×n` matrix of iid Uniform[0, 1) entries.
pub fn gen_uniform(m: usize, n: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DenseMatrix::from_fn(m, n, |_, _| rng.gen::<f64>())
}
