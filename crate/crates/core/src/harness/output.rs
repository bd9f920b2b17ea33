use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::metrics::IterationRecord;

pub const TRACE_HEADER: &str =
    "iter,rel_fro,rel_cheb,neg_fro,neg_cheb,neg_density,over_fro,over_cheb,over_density";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trace_csv(records: &[IterationRecord]) -> String {
    let mut out = String::with_capacity(64 + records.len() * 200);
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for r in records {
        let _ = write!(out, "{}", r.iteration);
        for v in [
            r.rel_frobenius,
            r.rel_chebyshev,
            r.neg_frobenius,
            r.neg_chebyshev,
            r.neg_density,
            r.over_frobenius,
            r.over_chebyshev,
            r.over_density,
        ] {
            out.push(',');
            out.push_str(&format_float(v));
        }
        out.push('\n');
    }
    out
}

pub fn read_trace_csv(text: &str) -> Result<Vec<IterationRecord>> {
    let mut lines = text.lines();
    if lines.next() != Some(TRACE_HEADER) {
        return Err(Error::Config("trace file has an unexpected header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let bad = || Error::Config(format!("bad trace row {line:?}"));
            let mut cells = line.split(',');
            let iteration = cells.next().and_then(|c| c.parse().ok()).ok_or_else(bad)?;
            let v: Vec<f64> = cells.map(|c| c.parse().map_err(|_| bad())).collect::<Result<_>>()?;
            if v.len() != 8 {
                return Err(bad());
            }
            Ok(IterationRecord {
                iteration,
                rel_frobenius: v[0],
                rel_chebyshev: v[1],
                neg_frobenius: v[2],
                neg_chebyshev: v[3],
                neg_density: v[4],
                over_frobenius: v[5],
                over_chebyshev: v[6],
                over_density: v[7],
            })
        })
        .collect()
}
