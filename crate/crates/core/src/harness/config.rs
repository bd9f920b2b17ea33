use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::methods::MethodSpec;
use crate::problems::{gen_uniform, load_image_pgm, smoluchowski_solution, SmoluchowskiSpec};
use crate::sketch::sub_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemConfig {
    /// A fresh iid Uniform[0, 1] matrix per trial.
    Uniform { m: usize, n: usize, seed: u64 },
    /// A PGM image scaled to `[0, 1]`.
    Image { path: PathBuf },
    Smoluchowski(SmoluchowskiSpec),
}

impl ProblemConfig {
    /// Target matrix of trial `trial`.
    pub fn target(&self, trial: usize) -> Result<DenseMatrix> {
        match self {
            ProblemConfig::Uniform { m, n, seed } => {
                if *m == 0 || *n == 0 {
                    return Err(Error::Config(format!("empty uniform problem {m}x{n}")));
                }
                Ok(gen_uniform(*m, *n, sub_seed(*seed, trial as u64)))
            }
            ProblemConfig::Image { path } => load_image_pgm(path).map_err(|e| match e {
                Error::Io(io) => Error::Config(format!("cannot read image {}: {io}", path.display())),
                other => other,
            }),
            ProblemConfig::Smoluchowski(spec) => smoluchowski_solution(spec),
        }
    }

    /// Whether every trial sees the same target.
    pub fn is_fixed(&self) -> bool {
        !matches!(self, ProblemConfig::Uniform { .. })
    }

    pub fn default_init(&self) -> InitPolicy {
        match self {
            ProblemConfig::Smoluchowski(_) => InitPolicy::Method,
            _ => InitPolicy::Svd,
        }
    }
}

/// Starting point of a run on the full target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitPolicy {
    /// Truncated SVD of the target, shared by all methods.
    Svd,
    /// Each method's own estimator applied once to the target.
    Method,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub problem: ProblemConfig,
    pub method: MethodSpec,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<InitPolicy>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if let ProblemConfig::Smoluchowski(s) = &self.problem {
            s.validate()?;
        }
        self.method.validate()
    }

    pub fn init_policy(&self) -> InitPolicy {
        self.init.unwrap_or_else(|| self.problem.default_init())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = ExperimentConfig::from_json(
            r#"{
                "problem": {"kind": "uniform", "m": 8, "n": 6, "seed": 3},
                "method": {"method": "gn", "l": 5, "rank": 2, "iterations": 4,
                           "sketch": {"kind": "rademacher"}},
                "trials": 2,
                "master_seed": 9
            }"#,
        )
        .unwrap();
        assert_eq!(cfg.trials, 2);
        assert_eq!(cfg.init_policy(), InitPolicy::Svd);
        assert_eq!(cfg.problem.target(0).unwrap().shape(), (8, 6));
        assert_ne!(cfg.problem.target(0).unwrap(), cfg.problem.target(1).unwrap());
    }

    #[test]
    fn smoluchowski_defaults() {
        let cfg = ExperimentConfig::from_json(
            r#"{"problem": {"kind": "smoluchowski", "kernel": 100, "a": 1, "b": 1,
                            "t": 6, "h": 0.1, "nodes": 16},
                "method": {"method": "tangent", "rank": 3}}"#,
        )
        .unwrap();
        assert_eq!(cfg.trials, 1);
        assert_eq!(cfg.init_policy(), InitPolicy::Method);
        assert!(cfg.problem.is_fixed());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(ExperimentConfig::from_json("{").is_err());
        assert!(ExperimentConfig::from_json(
            r#"{"problem": {"kind": "uniform", "m": 4, "n": 4, "seed": 0},
                "method": {"method": "svd", "rank": 1}, "trials": 0}"#
        )
        .is_err());
        assert!(ExperimentConfig::from_json(
            r#"{"problem": {"kind": "uniform", "m": 4, "n": 4, "seed": 0},
                "method": {"method": "hmt", "k": 1, "rank": 2,
                           "sketch": {"kind": "gaussian"}}}"#
        )
        .is_err());
        let missing = ProblemConfig::Image {
            path: "/nonexistent/x.pgm".into(),
        };
        assert!(matches!(missing.target(0), Err(Error::Config(_))));
    }
}
