//! Entrywise projection onto a box `[lo, hi]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Closed box `[lo, hi]` with possibly infinite ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxBounds {
    #[serde(
        default = "neg_inf",
        serialize_with = "extended::serialize",
        deserialize_with = "extended::lower"
    )]
    pub lo: f64,
    #[serde(
        default = "pos_inf",
        serialize_with = "extended::serialize",
        deserialize_with = "extended::upper"
    )]
    pub hi: f64,
}

fn neg_inf() -> f64 {
    f64::NEG_INFINITY
}

fn pos_inf() -> f64 {
    f64::INFINITY
}

impl BoxBounds {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let b = Self { lo, hi };
        b.validate()?;
        Ok(b)
    }

    /// `[0, +∞)`.
    pub fn nonnegative() -> Self {
        Self {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }

    /// `[0, 1]`.
    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.is_nan() || self.hi.is_nan() || self.lo >= self.hi {
            return Err(Error::InvalidParameter(format!(
                "box bounds need lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.lo == f64::INFINITY || self.hi == f64::NEG_INFINITY {
            return Err(Error::InvalidParameter("empty box".into()));
        }
        Ok(())
    }

    pub fn has_upper(&self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn clamp(&self, x: f64) -> f64 {
        if x < self.lo {
            self.lo
        } else if x > self.hi {
            self.hi
        } else {
            x
        }
    }
}

impl Default for BoxBounds {
    fn default() -> Self {
        Self::nonnegative()
    }
}

/// JSON has no infinities, so unbounded ends are written as `null`.
mod extended {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn lower<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NEG_INFINITY))
    }

    pub fn upper<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// Clamps every entry of `x` into `b`. Entries already inside, including
/// both signed zeros, are copied bit for bit.
pub fn project_box(x: &DenseMatrix, b: BoxBounds) -> DenseMatrix {
    let mut out = x.clone();
    project_box_in_place(&mut out, b);
    out
}

pub fn project_box_in_place(x: &mut DenseMatrix, b: BoxBounds) {
    for v in x.data_mut() {
        *v = b.clamp(*v);
    }
}
