//! Report aggregation and serialization.
//!
//! Two artifacts come out of a run:
//!
//! * a CSV with one row per retained trial
//!   (`n,trial,raw_statistic,standardized`, floats at 17 significant digits,
//!   excluded trials in a trailing `# excluded,n,trial,reason` comment
//!   block), and
//! * a JSON summary mirroring [`ExperimentReport`].
//!
//! Everything in both artifacts except `wall_time_seconds` is a pure
//! function of `(config, master_seed)`.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::stats::{ks_distance_to_half_normal, ks_distance_to_std_normal};
use crate::Result;

use super::config::ExperimentConfig;
use super::runner::{DimensionResult, ExperimentOutput};
use super::ExperimentKind;

/// Per-dimension aggregate record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NRecord {
    pub n: usize,
    pub trials_requested: u64,
    pub trials_excluded: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_to_normal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_to_half_normal: Option<f64>,
    pub sample_mean: Option<f64>,
    pub sample_variance: Option<f64>,
    pub wall_time_seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub master_seed: u64,
    pub config: ExperimentConfig,
    pub artifact_version: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub per_n: Vec<NRecord>,
    pub provenance: Provenance,
}

impl ExperimentOutput {
    pub fn report(&self) -> Result<ExperimentReport> {
        let half_normal = self.config.experiment == ExperimentKind::HyperplaneDistance;
        let per_n = self
            .per_n
            .iter()
            .map(|dim| self.n_record(dim, half_normal))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExperimentReport {
            per_n,
            provenance: Provenance {
                master_seed: self.config.master_seed,
                config: self.config.clone(),
                artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            },
        })
    }

    fn n_record(&self, dim: &DimensionResult, half_normal: bool) -> Result<NRecord> {
        debug_assert_eq!(
            dim.rows.len() + dim.excluded.len(),
            self.config.trials as usize,
            "retained + excluded must account for every requested trial"
        );
        let sample = dim.standardized_sample()?;
        let (ks_to_normal, ks_to_half_normal) = if sample.is_empty() {
            (None, None)
        } else if half_normal {
            (None, Some(ks_distance_to_half_normal(&sample)?))
        } else {
            (Some(ks_distance_to_std_normal(&sample)?), None)
        };
        Ok(NRecord {
            n: dim.n,
            trials_requested: self.config.trials,
            trials_excluded: dim.excluded.len() as u64,
            ks_to_normal,
            ks_to_half_normal,
            sample_mean: sample.mean().ok(),
            sample_variance: sample.variance().ok(),
            wall_time_seconds: dim.wall_seconds,
        })
    }

    /// Writes the per-trial CSV.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,trial,raw_statistic,standardized")?;
        for dim in &self.per_n {
            for row in &dim.rows {
                writeln!(
                    w,
                    "{},{},{:.16e},{:.16e}",
                    dim.n, row.trial, row.raw, row.standardized
                )?;
            }
        }
        writeln!(w, "# excluded,n,trial,reason")?;
        for dim in &self.per_n {
            for excl in &dim.excluded {
                writeln!(w, "# excluded,{},{},{}", dim.n, excl.trial, excl.reason)?;
            }
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is ascii")
    }

    pub fn emit_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))?;
        Ok(())
    }

    pub fn summary_string(&self) -> Result<String> {
        let report = self.report()?;
        Ok(serde_json::to_string_pretty(&report)?)
    }

    pub fn emit_summary(&self, path: &Path) -> Result<()> {
        let text = self.summary_string()?;
        std::fs::write(path, text)?;
        Ok(())
    }
}
