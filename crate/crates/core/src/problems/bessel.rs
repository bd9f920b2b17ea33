use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 20.0;

/// `log I₀(z)` for `z ≥ 0`: power series below 20, the large-argument
/// expansion `e^z / sqrt(2πz) · Σ ((2k−1)!!)² / (k! (8z)^k)` above.
pub fn bessel_i0_log(z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::InvalidParameter(format!("I0 argument {z} is not >= 0")));
    }
    if z.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(if z < SERIES_LIMIT {
        log_series(z)
    } else {
        log_asymptotic(z)
    })
}

fn log_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let (mut term, mut sum, mut k) = (1.0f64, 1.0f64, 0.0f64);
    loop {
        k += 1.0;
        term *= q / (k * k);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum.ln()
}

fn log_asymptotic(z: f64) -> f64 {
    let (mut term, mut sum, mut k) = (1.0f64, 1.0f64, 0.0f64);
    loop {
        k += 1.0;
        let next = term * (2.0 * k - 1.0).powi(2) / (8.0 * z * k);
        // the series is asymptotic: stop at the smallest term
        if next >= term {
            break;
        }
        term = next;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    z - 0.5 * (2.0 * std::f64::consts::PI * z).ln() + sum.ln()
}
