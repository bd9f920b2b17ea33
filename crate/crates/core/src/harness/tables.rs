use std::fmt::Write as _;

use super::output::format_float;
use crate::error::{Error, Result};
use crate::flops::flop_report;
use crate::linalg::DenseMatrix;
use crate::methods::MethodSpec;
use crate::metrics::normalized_spectrum;
use crate::sketch::SketchKind;

fn sci2(x: f64) -> String {
    format!("{x:.1e}")
}

/// Flop table with two significant figures per entry.
pub fn print_flop_table(m: usize, n: usize, specs: &[MethodSpec]) -> Result<String> {
    let mut out = format!(
        "{:<28} {:>10} {:>10} {:>10}\n",
        "method", "init", "per_iter", "mn_coef"
    );
    for spec in specs {
        let r = flop_report(spec, m, n)?;
        let coef = r
            .dominant_mn_coefficient
            .map_or_else(|| "-".to_string(), |c| format!("{c}"));
        let _ = writeln!(
            out,
            "{:<28} {:>10} {:>10} {:>10}",
            spec.label(),
            sci2(r.init_flops),
            sci2(r.per_iteration_flops),
            coef
        );
    }
    Ok(out)
}

/// Sizes and method lists of the three benchmark experiments.
pub fn preset_table(name: &str) -> Result<(usize, usize, Vec<MethodSpec>)> {
    let sparse = SketchKind::SparseRademacher { density: 0.2 };
    Ok(match name {
        "uniform" => {
            let r = 64;
            (
                256,
                256,
                vec![
                    MethodSpec::svd(r),
                    MethodSpec::tangent(r),
                    MethodSpec::hmt(r, 1, 70, SketchKind::Gaussian),
                    MethodSpec::hmt(r, 0, 70, SketchKind::Gaussian),
                    MethodSpec::hmt(r, 0, 70, SketchKind::Rademacher),
                    MethodSpec::hmt(r, 0, 70, sparse),
                    MethodSpec::tropp(r, 70, 100, sparse),
                    MethodSpec::tropp(r, 70, 85, sparse),
                    MethodSpec::gn(r, 150, sparse),
                    MethodSpec::gn(r, 120, sparse),
                ],
            )
        }
        "image" => {
            let r = 50;
            (
                512,
                512,
                vec![
                    MethodSpec::svd(r),
                    MethodSpec::tangent(r),
                    MethodSpec::hmt(r, 0, 60, sparse),
                    MethodSpec::hmt(r, 0, 55, sparse),
                    MethodSpec::tropp(r, 65, 110, sparse),
                    MethodSpec::tropp(r, 60, 120, sparse),
                    MethodSpec::gn(r, 340, sparse),
                    MethodSpec::gn(r, 150, sparse),
                ],
            )
        }
        "smoluchowski" => {
            let r = 10;
            (
                1024,
                1024,
                vec![
                    MethodSpec::svd(r),
                    MethodSpec::tangent(r),
                    MethodSpec::hmt(r, 0, 15, sparse),
                    MethodSpec::tropp(r, 15, 25, sparse),
                    MethodSpec::gn(r, 40, sparse),
                ],
            )
        }
        other => {
            return Err(Error::Config(format!(
                "unknown preset {other:?} (uniform, image, smoluchowski)"
            )))
        }
    })
}

/// CSV `index,sigma_normalized` of the leading `count` normalized singular
/// values, 1-based.
pub fn export_spectrum(x: &DenseMatrix, count: usize) -> Result<String> {
    let s = normalized_spectrum(x)?;
    if count == 0 || count > s.len() {
        return Err(Error::Config(format!(
            "count {count} outside 1..={}",
            s.len()
        )));
    }
    let mut out = String::from("index,sigma_normalized\n");
    for (i, v) in s.iter().take(count).enumerate() {
        let _ = writeln!(out, "{},{}", i + 1, format_float(*v));
    }
    Ok(out)
}
