//! Property tests over randomized inputs.

use proptest::prelude::*;

use hdvol::geometry::{scaling, standardize, BodyModel, CenteringMode, StandardizationModel};
use hdvol::linalg::{log_abs_det, SquareMatrix};
use hdvol::sampling::{lp_norm, EntryDistribution, LpBallModel, RngStream};
use hdvol::specfun::{digamma, ln_gamma, std_normal_cdf, trigamma};
use hdvol::stats::{ks_distance_to_std_normal, Sample};

proptest! {
    #[test]
    fn digamma_recurrence(x in 0.01f64..1e6) {
        let step = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
        prop_assert!((step - 1.0 / x).abs() < 1e-10);
    }

    #[test]
    fn trigamma_recurrence(x in 0.01f64..1e6) {
        let step = trigamma(x + 1.0).unwrap() - trigamma(x).unwrap();
        prop_assert!((step + 1.0 / (x * x)).abs() < 1e-10);
    }

    #[test]
    fn ln_gamma_recurrence(x in 0.001f64..1e6) {
        let lg = ln_gamma(x + 1.0).unwrap();
        let step = lg - ln_gamma(x).unwrap();
        prop_assert!((step - x.ln()).abs() < 1e-11 * lg.abs().max(1.0));
    }

    #[test]
    fn normal_cdf_symmetry_and_order(a in -8.0f64..8.0, b in -8.0f64..8.0) {
        prop_assert!((std_normal_cdf(a) + std_normal_cdf(-a) - 1.0).abs() < 1e-14);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(std_normal_cdf(lo) <= std_normal_cdf(hi));
    }

    #[test]
    fn column_scaling_shifts_log_det(seed in 0u64..1000, c in prop::sample::select(
        vec![-4.0f64, -0.5, 0.25, 1.5, 8.0, -1.0]
    )) {
        let mut rng = RngStream::new(seed, 0);
        let sampler = EntryDistribution::Gaussian.sampler().unwrap();
        let n = 5usize;
        let mut cols: Vec<Vec<f64>> =
            (0..n).map(|_| (0..n).map(|_| sampler.sample(&mut rng)).collect()).collect();
        let base = log_abs_det(&SquareMatrix::from_columns(&cols).unwrap());
        for x in cols[3].iter_mut() {
            *x *= c;
        }
        let scaled = log_abs_det(&SquareMatrix::from_columns(&cols).unwrap());
        prop_assert!((scaled.log_abs - base.log_abs - c.abs().ln()).abs()
            < 1e-11 * (base.log_abs.abs() + 1.0));
        let expect_sign = if c < 0.0 { -base.sign } else { base.sign };
        prop_assert_eq!(scaled.sign, expect_sign);
    }

    #[test]
    fn ks_mirror_invariance(seed in 0u64..1000, len in 2usize..200) {
        let mut rng = RngStream::new(seed, 1);
        let values: Vec<f64> = (0..len).map(|_| 2.0 * rng.next_std_normal() - 0.7).collect();
        let mirrored: Vec<f64> = values.iter().map(|v| -v).collect();
        let a = ks_distance_to_std_normal(&Sample::new(values).unwrap()).unwrap();
        let b = ks_distance_to_std_normal(&Sample::new(mirrored).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn standardize_is_affine(log_vol in -50.0f64..50.0, n in 2usize..500) {
        let model = StandardizationModel::GeneralBody(BodyModel::SymmetricCube);
        let s0 = standardize(log_vol, n, &model, CenteringMode::ExactFactorial).unwrap();
        let s1 = standardize(log_vol + 1.0, n, &model, CenteringMode::ExactFactorial).unwrap();
        prop_assert!((s1 - s0 - 1.0 / scaling(n)).abs() < 1e-10);
    }

    #[test]
    fn quantile_monotone(seed in 0u64..500, p in 0.0f64..1.0, q in 0.0f64..1.0) {
        let mut rng = RngStream::new(seed, 2);
        let values: Vec<f64> = (0..50).map(|_| rng.next_std_normal()).collect();
        let sample = Sample::new(values).unwrap();
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        prop_assert!(sample.quantile(lo).unwrap() <= sample.quantile(hi).unwrap());
    }

    #[test]
    fn lp_cone_points_on_boundary(seed in 0u64..200, p in 0.3f64..6.0, n in 1usize..12) {
        let model = LpBallModel::new(n, p, 0.0).unwrap();
        let sampler = model.sampler().unwrap();
        let mut rng = RngStream::new(seed, 3);
        let x = sampler.sample(&mut rng).unwrap();
        prop_assert!((lp_norm(&x, p) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn lp_points_inside_ball(seed in 0u64..200, p in 0.3f64..6.0, m in 0.0f64..4.0, n in 1usize..12) {
        let model = LpBallModel::new(n, p, m).unwrap();
        let sampler = model.sampler().unwrap();
        let mut rng = RngStream::new(seed, 4);
        let x = sampler.sample(&mut rng).unwrap();
        prop_assert!(lp_norm(&x, p) <= 1.0 + 1e-12);
    }
}
