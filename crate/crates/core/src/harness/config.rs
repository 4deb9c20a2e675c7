//! Experiment configuration: a flat JSON document whose fields mirror the
//! CLI flags. CLI flags override file values.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{BodyModel, CenteringMode};
use crate::sampling::EntryDistribution;
use crate::Result;

/// The experiment families the runner knows how to execute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Log-determinant of an n×n i.i.d. matrix, standardized.
    DetClt,
    /// Simplex pinned at the origin on n random points.
    PinnedSimplex,
    /// Simplex on n+1 random vertices, via the projective lift.
    FullSimplex,
    /// Random body spanned by n i.i.d.-coordinate points.
    Body,
    /// Random body spanned by n points from the lp-ball measure.
    LpBody,
    /// Scalar product of the unit normal of a random hyperplane with the
    /// normalized all-ones direction, scaled by `sqrt(n+1)`.
    NormalVector,
    /// Distance of a fresh random point to the span of n random vectors.
    HyperplaneDistance,
    /// The module-invariant self-test suite.
    Selftest,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 8] = [
        ExperimentKind::DetClt,
        ExperimentKind::PinnedSimplex,
        ExperimentKind::FullSimplex,
        ExperimentKind::Body,
        ExperimentKind::LpBody,
        ExperimentKind::NormalVector,
        ExperimentKind::HyperplaneDistance,
        ExperimentKind::Selftest,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::DetClt => "det-clt",
            ExperimentKind::PinnedSimplex => "pinned-simplex",
            ExperimentKind::FullSimplex => "full-simplex",
            ExperimentKind::Body => "body",
            ExperimentKind::LpBody => "lp-body",
            ExperimentKind::NormalVector => "normal-vector",
            ExperimentKind::HyperplaneDistance => "hyperplane-distance",
            ExperimentKind::Selftest => "selftest",
        }
    }

    /// Experiments whose per-trial statistic is standardized by
    /// `sqrt(ln(n)/2)` and therefore need `n ≥ 2`.
    pub fn is_standardized(&self) -> bool {
        matches!(
            self,
            ExperimentKind::DetClt
                | ExperimentKind::PinnedSimplex
                | ExperimentKind::FullSimplex
                | ExperimentKind::Body
                | ExperimentKind::LpBody
        )
    }
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .iter()
            .find(|k| k.name() == s)
            .copied()
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown experiment `{s}` (expected one of det-clt, pinned-simplex, \
                     full-simplex, body, lp-body, normal-vector, hyperplane-distance, selftest)"
                ))
            })
    }
}

/// CLI-expressible body families (the library additionally supports custom
/// bodies through [`BodyModel::Custom`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Simplex,
    Cube,
    SymCube,
    CrossPolytope,
}

impl BodyKind {
    pub fn to_model(self) -> BodyModel {
        match self {
            BodyKind::Simplex => BodyModel::StandardSimplex,
            BodyKind::Cube => BodyModel::Cube,
            BodyKind::SymCube => BodyModel::SymmetricCube,
            BodyKind::CrossPolytope => BodyModel::CrossPolytope,
        }
    }
}

impl std::str::FromStr for BodyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(BodyKind::Simplex),
            "cube" => Ok(BodyKind::Cube),
            "symcube" => Ok(BodyKind::SymCube),
            "crosspolytope" => Ok(BodyKind::CrossPolytope),
            _ => Err(Error::Config(format!(
                "unknown body `{s}` (expected simplex|cube|symcube|crosspolytope)"
            ))),
        }
    }
}

/// Worker count: a fixed positive integer or `auto` (all available cores).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

impl Threads {
    /// Value handed to the thread-pool builder; 0 means "default".
    pub fn pool_size(&self) -> usize {
        match self {
            Threads::Auto => 0,
            Threads::Fixed(t) => *t,
        }
    }
}

impl Serialize for Threads {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Threads::Auto => serializer.serialize_str("auto"),
            Threads::Fixed(t) => serializer.serialize_u64(*t as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Threads {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::String(s) if s == "auto" => Ok(Threads::Auto),
            serde_json::Value::Number(n) => {
                let t = n
                    .as_u64()
                    .ok_or_else(|| DeError::custom("threads must be a positive integer"))?;
                Ok(Threads::Fixed(t as usize))
            }
            _ => Err(DeError::custom("threads must be a positive integer or \"auto\"")),
        }
    }
}

impl std::str::FromStr for Threads {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        let t: usize = s
            .parse()
            .map_err(|_| Error::Config(format!("threads must be a positive integer or auto, got `{s}`")))?;
        Ok(Threads::Fixed(t))
    }
}

/// Full description of one experiment run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n_list: Vec<usize>,
    pub trials: u64,
    /// Entry distribution for the i.i.d. experiments.
    pub dist: EntryDistribution,
    /// lp-ball exponent (lp-body only).
    #[serde(rename = "p")]
    pub lp_p: f64,
    /// lp-ball shape parameter m (lp-body only).
    #[serde(rename = "m")]
    pub lp_m: f64,
    /// Template body for `body` and `lp-body`.
    pub body: BodyKind,
    pub centering_mode: CenteringMode,
    pub master_seed: u64,
    pub threads: Threads,
    pub out_csv: Option<PathBuf>,
    pub out_summary: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: ExperimentKind::DetClt,
            n_list: vec![50, 100],
            trials: 1000,
            dist: EntryDistribution::Gaussian,
            lp_p: 2.0,
            lp_m: 0.0,
            body: BodyKind::Cube,
            centering_mode: CenteringMode::ExactFactorial,
            master_seed: 0,
            threads: Threads::Auto,
            out_csv: None,
            out_summary: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(Error::Config("n_list must not be empty".into()));
        }
        let min_n = if self.experiment.is_standardized() { 2 } else { 1 };
        for &n in &self.n_list {
            if n < min_n {
                return Err(Error::Config(format!(
                    "n = {n} is below the minimum {min_n} for experiment {}",
                    self.experiment
                )));
            }
            if n > u32::MAX as usize {
                return Err(Error::Config(format!("n = {n} exceeds the supported range")));
            }
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be ≥ 1".into()));
        }
        if self.trials > u32::MAX as u64 {
            return Err(Error::Config("trials exceeds the supported range (2^32 - 1)".into()));
        }
        if !self.lp_p.is_finite() || self.lp_p <= 0.0 {
            return Err(Error::Config(format!("p must be positive, got {}", self.lp_p)));
        }
        if !self.lp_m.is_finite() || self.lp_m < 0.0 {
            return Err(Error::Config(format!("m must be ≥ 0, got {}", self.lp_m)));
        }
        if self.threads == Threads::Fixed(0) {
            return Err(Error::Config("threads must be ≥ 1 or auto".into()));
        }
        Ok(())
    }
}

/// Injective stream index for trial `t` at dimension `n`; both are bounded
/// by 2^32 at validation so the pair packs into one u64.
pub fn stream_index(n: usize, trial: u64) -> u64 {
    ((n as u64) << 32) | trial
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::LpBody,
            n_list: vec![10, 20],
            trials: 100,
            dist: EntryDistribution::PGeneralizedGaussian { p: 1.5 },
            lp_p: 3.0,
            lp_m: 1.0,
            body: BodyKind::Simplex,
            centering_mode: CenteringMode::StirlingPaperForm,
            master_seed: 99,
            threads: Threads::Fixed(4),
            out_csv: Some("out.csv".into()),
            out_summary: None,
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn flat_json_fields_parse() {
        let text = r#"{
            "experiment": "det-clt",
            "n_list": [16, 32],
            "trials": 50,
            "dist": "rademacher",
            "p": 2.0,
            "m": 0.0,
            "body": "crosspolytope",
            "centering_mode": "paper",
            "master_seed": 7,
            "threads": "auto"
        }"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::DetClt);
        assert_eq!(cfg.body, BodyKind::CrossPolytope);
        assert_eq!(cfg.centering_mode, CenteringMode::StirlingPaperForm);
        assert_eq!(cfg.threads, Threads::Auto);
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(ExperimentConfig::from_json(r#"{"experiment": "det-clt", "bogus": 1}"#).is_err());
    }

    #[test]
    fn validation_rejects_bad_values() {
        let cfg = ExperimentConfig { n_list: vec![], ..ExperimentConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { n_list: vec![1], ..ExperimentConfig::default() };
        assert!(cfg.validate().is_err());
        // non-standardized experiments accept n = 1
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::NormalVector,
            n_list: vec![1],
            ..ExperimentConfig::default()
        };
        cfg.validate().unwrap();
        let cfg = ExperimentConfig { trials: 0, ..ExperimentConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { lp_p: -1.0, ..ExperimentConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { threads: Threads::Fixed(0), ..ExperimentConfig::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn experiment_names_round_trip() {
        for kind in ExperimentKind::ALL {
            let parsed: ExperimentKind = kind.name().parse().unwrap();
            assert_eq!(parsed, kind);
        }
        assert!("det_clt".parse::<ExperimentKind>().is_err());
    }

    #[test]
    fn stream_indices_are_injective() {
        let mut seen = std::collections::HashSet::new();
        for n in [2usize, 3, 100, 4096] {
            for t in [0u64, 1, 2, 999_999] {
                assert!(seen.insert(stream_index(n, t)));
            }
        }
    }
}
