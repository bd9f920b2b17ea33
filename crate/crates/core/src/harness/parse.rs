use crate::error::{Error, Result};
use crate::methods::MethodSpec;
use crate::sketch::SketchKind;

/// `"256x256"` → `(256, 256)`.
pub fn parse_size(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("size {text:?} is not of the form MxN"));
    let (m, n) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let m = m.trim().parse().map_err(|_| bad())?;
    let n = n.trim().parse().map_err(|_| bad())?;
    if m == 0 || n == 0 {
        return Err(bad());
    }
    Ok((m, n))
}

fn split_call(text: &str) -> Result<(&str, Vec<&str>, &str)> {
    let text = text.trim();
    let name_end = text
        .find(|c: char| !c.is_ascii_alphanumeric())
        .unwrap_or(text.len());
    let (name, rest) = text.split_at(name_end);
    let rest = rest.trim_start();
    if let Some(inner) = rest.strip_prefix('(') {
        let close = inner
            .find(')')
            .ok_or_else(|| Error::Config(format!("unclosed parenthesis in {text:?}")))?;
        let args = inner[..close].split(',').map(str::trim).collect();
        Ok((name, args, &inner[close + 1..]))
    } else {
        Ok((name, Vec::new(), rest))
    }
}

fn int(arg: Option<&&str>, what: &str, label: &str) -> Result<usize> {
    arg.and_then(|a| a.parse().ok())
        .ok_or_else(|| Error::Config(format!("{label:?}: bad or missing {what}")))
}

fn parse_sketch(text: &str) -> Result<Option<SketchKind>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(None);
    }
    let (name, args, rest) = split_call(text)?;
    if !rest.trim().is_empty() {
        return Err(Error::Config(format!("trailing text {rest:?} after sketch")));
    }
    let kind = match (name.to_ascii_lowercase().as_str(), args.as_slice()) {
        ("n", _) | ("gaussian", []) => SketchKind::Gaussian,
        ("rad" | "rademacher", []) => SketchKind::Rademacher,
        ("rad" | "rademacher", [rho]) => SketchKind::SparseRademacher {
            density: rho
                .parse()
                .map_err(|_| Error::Config(format!("bad density {rho:?}")))?,
        },
        _ => return Err(Error::Config(format!("unknown sketch {text:?}"))),
    };
    kind.validate()?;
    Ok(Some(kind))
}

/// Parses a table label such as `SVD`, `Tangent`, `HMT(1, 70) N(0,1)`,
/// `Tropp(70, 100) Rad(0.2)` or `GN(150) Rad` into a spec of rank `rank`.
pub fn parse_spec_label(label: &str, rank: usize) -> Result<MethodSpec> {
    let (name, args, rest) = split_call(label)?;
    let sketch = parse_sketch(rest)?;
    let mut spec = match name.to_ascii_lowercase().as_str() {
        "svd" => MethodSpec::svd(rank),
        "tangent" => MethodSpec::tangent(rank),
        "hmt" => MethodSpec::hmt(
            rank,
            int(args.first(), "p", label)?,
            int(args.get(1), "k", label)?,
            SketchKind::Gaussian,
        ),
        "tropp" => MethodSpec::tropp(
            rank,
            int(args.first(), "k", label)?,
            int(args.get(1), "l", label)?,
            SketchKind::Gaussian,
        ),
        "gn" => MethodSpec::gn(rank, int(args.first(), "l", label)?, SketchKind::Gaussian),
        _ => return Err(Error::Config(format!("unknown method in {label:?}"))),
    };
    if spec.method.is_randomized() {
        spec.sketch = Some(sketch.ok_or_else(|| {
            Error::Config(format!("{label:?}: randomized methods need a sketch"))
        })?);
    } else if sketch.is_some() {
        return Err(Error::Config(format!("{label:?}: method takes no sketch")));
    }
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_size("256x128").unwrap(), (256, 128));
        assert_eq!(parse_size(" 4 X 5 ").unwrap(), (4, 5));
        assert!(parse_size("0x4").is_err());
        assert!(parse_size("256").is_err());
    }

    #[test]
    fn labels_round_trip() {
        let sparse = SketchKind::SparseRademacher { density: 0.2 };
        let cases = [
            MethodSpec::svd(64),
            MethodSpec::tangent(64),
            MethodSpec::hmt(64, 1, 70, SketchKind::Gaussian),
            MethodSpec::hmt(64, 0, 70, SketchKind::Rademacher),
            MethodSpec::tropp(64, 70, 100, sparse),
            MethodSpec::gn(64, 150, sparse),
        ];
        for spec in cases {
            assert_eq!(parse_spec_label(&spec.label(), 64).unwrap(), spec);
        }
        assert_eq!(
            parse_spec_label("hmt(0,15) rad(0.2)", 10).unwrap(),
            MethodSpec::hmt(10, 0, 15, sparse)
        );
    }

    #[test]
    fn label_errors() {
        for bad in ["", "HMT(1)", "HMT(1, 70)", "Tangent Rad", "GN(3) Rad(0)", "GN(150", "Foo"] {
            assert!(parse_spec_label(bad, 64).is_err(), "{bad:?}");
        }
        assert!(parse_spec_label("GN(5) Rad", 10).is_err());
    }
}
