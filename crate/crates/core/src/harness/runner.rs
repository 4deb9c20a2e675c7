//! Parallel trial execution.
//!
//! Every trial owns an [`RngStream`] derived injectively from
//! `(master_seed, n, trial)`, so results are reproducible irrespective of
//! scheduling: workers process whole trials, and per-trial outputs are
//! collected into index order before any aggregation. Singular or degenerate
//! trials are excluded and counted, never resampled — resampling would bias
//! the conditional law.

use rayon::prelude::*;

use crate::error::Error;
use crate::geometry::{
    log_volume_full_simplex, log_volume_random_body, standardize, BodyModel,
    StandardizationModel,
};
use crate::linalg::{dist_to_subspace, unit_normal, SquareMatrix};
use crate::sampling::{EntrySampler, LpBallModel, LpPointSampler, RngStream};
use crate::stats::Sample;
use crate::Result;

use super::config::{stream_index, ExperimentConfig, ExperimentKind};

/// One retained trial: the raw recorded statistic and its standardized form.
///
/// What the two columns hold depends on the experiment:
/// `det-clt`/`pinned-simplex`/`body`/`lp-body`/`full-simplex` record the
/// log-volume and the standardized statistic; `normal-vector` records
/// `‖N‖_∞` and `sqrt(n+1)·⟨V, N⟩`; `hyperplane-distance` records the
/// distance in both columns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialRow {
    pub trial: u64,
    pub raw: f64,
    pub standardized: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExcludedTrial {
    pub trial: u64,
    pub reason: &'static str,
}

/// All trials at one dimension.
#[derive(Clone, Debug)]
pub struct DimensionResult {
    pub n: usize,
    pub rows: Vec<TrialRow>,
    pub excluded: Vec<ExcludedTrial>,
    pub wall_seconds: f64,
}

impl DimensionResult {
    /// The standardized values as a [`Sample`], with exclusion accounting.
    pub fn standardized_sample(&self) -> Result<Sample> {
        let values = self.rows.iter().map(|r| r.standardized).collect();
        Ok(Sample::new(values)?.with_excluded(self.excluded.len()))
    }
}

/// Everything an experiment run produced: per-trial data plus the config.
#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub config: ExperimentConfig,
    pub per_n: Vec<DimensionResult>,
}

enum TrialOutcome {
    Retained { raw: f64, standardized: f64 },
    Excluded { reason: &'static str },
}

/// Runs the configured experiment: for each `n` in `n_list`, `trials`
/// independent trials on a worker pool of the configured size.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    if cfg.experiment == ExperimentKind::Selftest {
        return Err(Error::Config(
            "experiment `selftest` runs through the selftest entry point, not run_experiment"
                .into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.pool_size())
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let per_n = pool.install(|| -> Result<Vec<DimensionResult>> {
        cfg.n_list.iter().map(|&n| run_dimension(cfg, n)).collect()
    })?;
    Ok(ExperimentOutput { config: cfg.clone(), per_n })
}

fn run_dimension(cfg: &ExperimentConfig, n: usize) -> Result<DimensionResult> {
    let start = std::time::Instant::now();
    let trial_fn = TrialFn::prepare(cfg, n)?;
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = RngStream::new(cfg.master_seed, stream_index(n, trial));
            trial_fn.run(&mut rng)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(outcomes.len());
    let mut excluded = Vec::new();
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        let trial = trial as u64;
        match outcome {
            TrialOutcome::Retained { raw, standardized } => {
                rows.push(TrialRow { trial, raw, standardized })
            }
            TrialOutcome::Excluded { reason } => excluded.push(ExcludedTrial { trial, reason }),
        }
    }
    Ok(DimensionResult { n, rows, excluded, wall_seconds: start.elapsed().as_secs_f64() })
}

/// Per-dimension prepared state: samplers and the standardization model are
/// built once and shared read-only across workers.
enum TrialFn {
    RandomBody {
        n: usize,
        entries: EntrySampler,
        body: BodyModel,
        model: StandardizationModel,
        mode: crate::geometry::CenteringMode,
    },
    FullSimplex {
        n: usize,
        entries: EntrySampler,
        mode: crate::geometry::CenteringMode,
    },
    LpBody {
        n: usize,
        points: LpPointSampler,
        body: BodyModel,
        model: StandardizationModel,
        mode: crate::geometry::CenteringMode,
    },
    NormalVector { n: usize, entries: EntrySampler },
    HyperplaneDistance { n: usize, entries: EntrySampler },
}

impl TrialFn {
    fn prepare(cfg: &ExperimentConfig, n: usize) -> Result<TrialFn> {
        let mode = cfg.centering_mode;
        Ok(match cfg.experiment {
            ExperimentKind::DetClt | ExperimentKind::PinnedSimplex | ExperimentKind::Body => {
                let body = match cfg.experiment {
                    ExperimentKind::DetClt => BodyModel::Cube,
                    ExperimentKind::PinnedSimplex => BodyModel::StandardSimplex,
                    _ => cfg.body.to_model(),
                };
                TrialFn::RandomBody {
                    n,
                    entries: cfg.dist.sampler()?,
                    model: StandardizationModel::GeneralBody(body.clone()),
                    body,
                    mode,
                }
            }
            ExperimentKind::FullSimplex => {
                TrialFn::FullSimplex { n, entries: cfg.dist.sampler()?, mode }
            }
            ExperimentKind::LpBody => {
                let lp = LpBallModel::new(n, cfg.lp_p, cfg.lp_m)?;
                let body = cfg.body.to_model();
                TrialFn::LpBody {
                    n,
                    points: lp.sampler()?,
                    model: StandardizationModel::LpBody { body: body.clone(), lp },
                    body,
                    mode,
                }
            }
            ExperimentKind::NormalVector => {
                TrialFn::NormalVector { n, entries: cfg.dist.sampler()? }
            }
            ExperimentKind::HyperplaneDistance => {
                TrialFn::HyperplaneDistance { n, entries: cfg.dist.sampler()? }
            }
            ExperimentKind::Selftest => unreachable!("rejected by run_experiment"),
        })
    }

    fn run(&self, rng: &mut RngStream) -> Result<TrialOutcome> {
        match self {
            TrialFn::RandomBody { n, entries, body, model, mode } => {
                let n = *n;
                let data: Vec<f64> = (0..n * n).map(|_| entries.sample(rng)).collect();
                let matrix = SquareMatrix::from_raw(n, data)?;
                let log_vol = log_volume_random_body(body, &matrix);
                if !log_vol.is_finite() {
                    return Ok(TrialOutcome::Excluded { reason: "singular" });
                }
                let standardized = standardize(log_vol, n, model, *mode)?;
                Ok(TrialOutcome::Retained { raw: log_vol, standardized })
            }
            TrialFn::FullSimplex { n, entries, mode } => {
                let n = *n;
                let points: Vec<Vec<f64>> = (0..n + 1)
                    .map(|_| (0..n).map(|_| entries.sample(rng)).collect())
                    .collect();
                let log_vol = log_volume_full_simplex(&points)?;
                if !log_vol.is_finite() {
                    return Ok(TrialOutcome::Excluded { reason: "singular" });
                }
                let standardized =
                    standardize(log_vol, n, &StandardizationModel::FullSimplex, *mode)?;
                Ok(TrialOutcome::Retained { raw: log_vol, standardized })
            }
            TrialFn::LpBody { n, points, body, model, mode } => {
                let n = *n;
                let mut data = vec![0.0; n * n];
                for col in data.chunks_exact_mut(n) {
                    points.sample_into(rng, col)?;
                }
                let matrix = SquareMatrix::from_raw(n, data)?;
                let log_vol = log_volume_random_body(body, &matrix);
                if !log_vol.is_finite() {
                    return Ok(TrialOutcome::Excluded { reason: "singular" });
                }
                let standardized = standardize(log_vol, n, model, *mode)?;
                Ok(TrialOutcome::Retained { raw: log_vol, standardized })
            }
            TrialFn::NormalVector { n, entries } => {
                let n = *n;
                let span: Vec<Vec<f64>> = (0..n)
                    .map(|_| (0..n + 1).map(|_| entries.sample(rng)).collect())
                    .collect();
                let normal = match unit_normal(&span) {
                    Ok(v) => v,
                    Err(Error::DegenerateSubspace) => {
                        return Ok(TrialOutcome::Excluded { reason: "degenerate" })
                    }
                    Err(e) => return Err(e),
                };
                // Choose uniformly between the two unit normals; a fixed sign
                // convention would correlate with the all-ones direction and
                // bias the scalar-product statistic.
                let sign = rng.next_sign();
                // Σ_i ±N_i = sqrt(n+1) · ⟨V, ±N⟩ for V = (1,…,1)/sqrt(n+1).
                let statistic = sign * normal.iter().sum::<f64>();
                let norm_inf = normal.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
                Ok(TrialOutcome::Retained { raw: norm_inf, standardized: statistic })
            }
            TrialFn::HyperplaneDistance { n, entries } => {
                let n = *n;
                let span: Vec<Vec<f64>> = (0..n)
                    .map(|_| (0..n + 1).map(|_| entries.sample(rng)).collect())
                    .collect();
                let fresh: Vec<f64> = (0..n + 1).map(|_| entries.sample(rng)).collect();
                let normal = match unit_normal(&span) {
                    Ok(v) => v,
                    Err(Error::DegenerateSubspace) => {
                        return Ok(TrialOutcome::Excluded { reason: "degenerate" })
                    }
                    Err(e) => return Err(e),
                };
                let distance = dist_to_subspace(&fresh, &normal)?;
                Ok(TrialOutcome::Retained { raw: distance, standardized: distance })
            }
        }
    }
}

/// Standardized KS values of the four named body rows on shared point sets:
/// per trial, one matrix is drawn and standardized against each body.
pub struct TableRow {
    pub body: &'static str,
    pub ks_to_normal: f64,
}

pub fn run_table1(cfg: &ExperimentConfig, n: usize) -> Result<Vec<TableRow>> {
    cfg.validate()?;
    let bodies = [
        ("simplex", BodyModel::StandardSimplex),
        ("cube", BodyModel::Cube),
        ("symcube", BodyModel::SymmetricCube),
        ("crosspolytope", BodyModel::CrossPolytope),
    ];
    let entries = cfg.dist.sampler()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.pool_size())
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let per_trial: Vec<Option<[f64; 4]>> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = RngStream::new(cfg.master_seed, stream_index(n, trial));
                let data: Vec<f64> = (0..n * n).map(|_| entries.sample(&mut rng)).collect();
                let matrix = SquareMatrix::from_raw(n, data)?;
                let mut values = [0.0f64; 4];
                for (slot, (_, body)) in values.iter_mut().zip(&bodies) {
                    let log_vol = log_volume_random_body(body, &matrix);
                    if !log_vol.is_finite() {
                        return Ok(None);
                    }
                    *slot = standardize(
                        log_vol,
                        n,
                        &StandardizationModel::GeneralBody(body.clone()),
                        cfg.centering_mode,
                    )?;
                }
                Ok(Some(values))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows = Vec::with_capacity(4);
    for (i, (name, _)) in bodies.iter().enumerate() {
        let values: Vec<f64> = per_trial.iter().flatten().map(|v| v[i]).collect();
        let sample = Sample::new(values)?;
        rows.push(TableRow {
            body: name,
            ks_to_normal: crate::stats::ks_distance_to_std_normal(&sample)?,
        });
    }
    Ok(rows)
}
