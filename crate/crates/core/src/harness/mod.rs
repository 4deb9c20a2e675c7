//! Experiment runner behind the `hdvol` CLI.
//!
//! A run is described by an [`ExperimentConfig`] (a flat JSON document; CLI
//! flags override file values), executed by [`run_experiment`] on a worker
//! pool, and reported as a per-trial CSV plus a JSON summary mirroring
//! [`ExperimentReport`]. Trial `t` at dimension `n` always draws from
//! `RngStream::new(master_seed, stream_index(n, t))`, so aggregates are
//! deterministic in `(config, master_seed)` irrespective of thread count.

mod config;
mod report;
mod runner;
mod selftest;

pub use config::{stream_index, BodyKind, ExperimentConfig, ExperimentKind, Threads};
pub use report::{ExperimentReport, NRecord, Provenance};
pub use runner::{
    run_experiment, run_table1, DimensionResult, ExcludedTrial, ExperimentOutput, TableRow,
    TrialRow,
};
pub use selftest::{run_selftest, CheckResult, SelftestReport};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::EntryDistribution;

    #[test]
    fn determinism_across_thread_counts() {
        let mut cfg = ExperimentConfig {
            experiment: ExperimentKind::FullSimplex,
            n_list: vec![8, 12],
            trials: 100,
            dist: EntryDistribution::Rademacher,
            master_seed: 5,
            threads: Threads::Fixed(1),
            ..ExperimentConfig::default()
        };
        let one = run_experiment(&cfg).unwrap();
        cfg.threads = Threads::Fixed(2);
        let two = run_experiment(&cfg).unwrap();
        cfg.threads = Threads::Fixed(8);
        let eight = run_experiment(&cfg).unwrap();
        assert_eq!(one.csv_string(), two.csv_string());
        assert_eq!(one.csv_string(), eight.csv_string());
    }

    #[test]
    fn run_experiment_rejects_selftest_kind() {
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::Selftest,
            ..ExperimentConfig::default()
        };
        assert!(run_experiment(&cfg).is_err());
    }

    #[test]
    fn hyperplane_distance_reports_half_normal_ks() {
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::HyperplaneDistance,
            n_list: vec![20],
            trials: 400,
            dist: EntryDistribution::Gaussian,
            master_seed: 9,
            ..ExperimentConfig::default()
        };
        let report = run_experiment(&cfg).unwrap().report().unwrap();
        assert!(report.per_n[0].ks_to_normal.is_none());
        let ks = report.per_n[0].ks_to_half_normal.unwrap();
        assert!(ks > 0.0 && ks < 0.2, "half-normal KS {ks}");
    }

    #[test]
    fn lp_body_runs_and_standardizes() {
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::LpBody,
            n_list: vec![12],
            trials: 200,
            lp_p: 2.0,
            lp_m: 1.0,
            body: BodyKind::Simplex,
            master_seed: 13,
            ..ExperimentConfig::default()
        };
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.per_n[0].rows.len(), 200);
        let report = out.report().unwrap();
        assert!(report.per_n[0].ks_to_normal.unwrap() < 0.5);
    }

    #[test]
    fn lp_trial_draws_cone_points() {
        // replay the draw sequence of lp-body trial 0 at n = 2, p = 2, m = 0:
        // both sampled points must sit on the unit circle
        use crate::sampling::{lp_norm, LpBallModel, RngStream};
        let mut rng = RngStream::new(5, stream_index(2, 0));
        let sampler = LpBallModel::new(2, 2.0, 0.0).unwrap().sampler().unwrap();
        for _ in 0..2 {
            let x = sampler.sample(&mut rng).unwrap();
            assert!((lp_norm(&x, 2.0) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn table1_rows_coincide_under_exact_centering() {
        let cfg = ExperimentConfig {
            experiment: ExperimentKind::Body,
            n_list: vec![10],
            trials: 150,
            master_seed: 21,
            ..ExperimentConfig::default()
        };
        let rows = run_table1(&cfg, 10).unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows[1..] {
            assert!((row.ks_to_normal - rows[0].ks_to_normal).abs() <= 1e-12);
        }
    }
}
