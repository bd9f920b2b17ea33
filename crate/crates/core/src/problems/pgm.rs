use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

fn malformed(msg: impl Into<String>) -> Error {
    Error::Pgm(msg.into())
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Option<&'a [u8]> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let tok = self
            .token()
            .ok_or_else(|| malformed(format!("missing {what}")))?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| malformed(format!("bad {what} {:?}", String::from_utf8_lossy(tok))))
    }
}

/// Decodes a P2 (ASCII) or P5 (binary) graymap into `[0, 1]` by dividing
/// each pixel by the header's maxval.
pub fn parse_pgm(bytes: &[u8]) -> Result<DenseMatrix> {
    let mut h = Header { bytes, pos: 0 };
    let binary = match h.token() {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(malformed("missing P2/P5 magic")),
    };
    let cols = h.number("width")?;
    let rows = h.number("height")?;
    let maxval = h.number("maxval")?;
    if cols == 0 || rows == 0 {
        return Err(malformed(format!("empty image {cols}x{rows}")));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(malformed(format!("maxval {maxval} outside 1..=65535")));
    }
    let count = rows * cols;
    let scale = 1.0 / maxval as f64;
    let mut data = Vec::with_capacity(count);
    if binary {
        // exactly one whitespace byte separates the header from the raster
        let start = h.pos + 1;
        let width = if maxval < 256 { 1 } else { 2 };
        let raster = bytes
            .get(start..start + count * width)
            .ok_or_else(|| malformed("truncated raster"))?;
        for px in raster.chunks_exact(width) {
            let v = if width == 1 {
                px[0] as usize
            } else {
                (px[0] as usize) << 8 | px[1] as usize
            };
            data.push(check_pixel(v, maxval)? as f64 * scale);
        }
    } else {
        for _ in 0..count {
            let v = h.number("pixel").map_err(|_| malformed("truncated raster"))?;
            data.push(check_pixel(v, maxval)? as f64 * scale);
        }
    }
    DenseMatrix::from_vec(rows, cols, data)
}

fn check_pixel(v: usize, maxval: usize) -> Result<usize> {
    if v > maxval {
        Err(malformed(format!("pixel {v} above maxval {maxval}")))
    } else {
        Ok(v)
    }
}

pub fn load_image_pgm(path: impl AsRef<Path>) -> Result<DenseMatrix> {
    parse_pgm(&std::fs::read(path)?)
}
