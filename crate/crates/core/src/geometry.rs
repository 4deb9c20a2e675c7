//! Random-body constructions, exact log-volumes, and the standardized
//! statistics.
//!
//! A body family `K_n` enters the pipeline only through its exact log-volume
//! `ln vol(K_n)`: the random body spanned by points `X_1..X_n` has
//! `vol = |det(X_1|…|X_n)| · vol(K_n)`, so everything downstream reduces to
//! the log-determinant plus a deterministic constant.
//!
//! [`standardize`] maps a log-volume to the statistic
//! `(log_vol + c(n)) / sqrt(ln(n)/2)`. Two centering modes are available:
//!
//! * [`CenteringMode::ExactFactorial`] (default) — the determinant centering
//!   is the exact `½ ln Γ(n)` (resp. `½ ln Γ(n+1)` for full simplices).
//! * [`CenteringMode::StirlingPaperForm`] — the determinant centering is
//!   replaced by its Stirling polynomial in `(n, ln n)`. The two modes
//!   differ by `¼ ln 2π + O(1/n)` in the numerator, which vanishes under
//!   the `sqrt(ln(n)/2)` scaling but slows the finite-n Gaussian fit.
//!
//! Body log-volumes stay exact in both modes, so standardized statistics on
//! a shared point set coincide across body families in either mode.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::linalg::{log_abs_det, SquareMatrix};
use crate::sampling::{const_a, LpBallModel};
use crate::specfun::{ln_factorial, ln_gamma};
use crate::Result;

/// A body family with an exact log-volume function of the dimension.
#[derive(Clone)]
pub enum BodyModel {
    /// `T^n = {x_i ≥ 0, Σx_i ≤ 1}`, volume `1/n!`.
    StandardSimplex,
    /// `C^n = [0,1]^n`, volume 1.
    Cube,
    /// `B_∞^n = [-1,1]^n`, volume `2^n`.
    SymmetricCube,
    /// `B_1^n`, volume `2^n/n!`.
    CrossPolytope,
    /// Any body supplied directly through its log-volume.
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl BodyModel {
    pub fn log_vol(&self, n: usize) -> f64 {
        match self {
            BodyModel::StandardSimplex => -ln_factorial(n),
            BodyModel::Cube => 0.0,
            BodyModel::SymmetricCube => n as f64 * std::f64::consts::LN_2,
            BodyModel::CrossPolytope => n as f64 * std::f64::consts::LN_2 - ln_factorial(n),
            BodyModel::Custom(f) => f(n),
        }
    }
}

impl fmt::Debug for BodyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyModel::StandardSimplex => write!(f, "StandardSimplex"),
            BodyModel::Cube => write!(f, "Cube"),
            BodyModel::SymmetricCube => write!(f, "SymmetricCube"),
            BodyModel::CrossPolytope => write!(f, "CrossPolytope"),
            BodyModel::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl fmt::Display for BodyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyModel::StandardSimplex => write!(f, "simplex"),
            BodyModel::Cube => write!(f, "cube"),
            BodyModel::SymmetricCube => write!(f, "symcube"),
            BodyModel::CrossPolytope => write!(f, "crosspolytope"),
            BodyModel::Custom(_) => write!(f, "custom"),
        }
    }
}

impl std::str::FromStr for BodyModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(BodyModel::StandardSimplex),
            "cube" => Ok(BodyModel::Cube),
            "symcube" => Ok(BodyModel::SymmetricCube),
            "crosspolytope" => Ok(BodyModel::CrossPolytope),
            _ => Err(Error::Config(format!(
                "unknown body `{s}` (expected simplex|cube|symcube|crosspolytope)"
            ))),
        }
    }
}

/// Which printed form of the deterministic centering to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CenteringMode {
    /// `½ ln Γ(n)` / `½ ln Γ(n+1)`, exact.
    #[serde(rename = "exact")]
    ExactFactorial,
    /// The Stirling polynomial `(n/2)·ln n − n/2 ∓ ¼·ln n`.
    #[serde(rename = "paper")]
    StirlingPaperForm,
}

impl std::str::FromStr for CenteringMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(CenteringMode::ExactFactorial),
            "paper" => Ok(CenteringMode::StirlingPaperForm),
            _ => Err(Error::Config(format!(
                "unknown centering mode `{s}` (expected exact|paper)"
            ))),
        }
    }
}

/// The limit-theorem family a statistic is standardized against.
#[derive(Clone, Debug)]
pub enum StandardizationModel {
    /// Simplex on `n+1` random vertices in n-space.
    FullSimplex,
    /// Body spanned by `n` i.i.d.-coordinate points in n-space.
    GeneralBody(BodyModel),
    /// Body spanned by `n` points from an lp-ball measure.
    LpBody { body: BodyModel, lp: LpBallModel },
}

/// `ln vol` of the random body `{Σ y_i X_i : y ∈ K}` spanned by the columns
/// of `points`: `ln |det| + ln vol(K_n)`. Returns `-inf` when the point set
/// is singular.
pub fn log_volume_random_body(body: &BodyModel, points: &SquareMatrix) -> f64 {
    let det = log_abs_det(points);
    if det.is_singular() {
        f64::NEG_INFINITY
    } else {
        det.log_abs + body.log_vol(points.n())
    }
}

/// `ln vol` of the simplex on the `n+1` given vertices in n-space, through
/// the projective lift: each `X_i` becomes the column `(X_i, 1)` of an
/// `(n+1)×(n+1)` matrix and `vol = |det| / n!`. Returns `-inf` on degenerate
/// vertex sets.
pub fn log_volume_full_simplex(points: &[Vec<f64>]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: points.len() });
    }
    let n = points.len() - 1;
    let dim = n + 1;
    let mut data = Vec::with_capacity(dim * dim);
    for point in points {
        if point.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: point.len() });
        }
        data.extend_from_slice(point);
        data.push(1.0);
    }
    let lifted = SquareMatrix::from_raw(dim, data)?;
    let det = log_abs_det(&lifted);
    if det.is_singular() {
        Ok(f64::NEG_INFINITY)
    } else {
        Ok(det.log_abs - ln_factorial(n))
    }
}

/// Deterministic centering term of the lp-ball statistic,
/// `(n/p) · ln(a(p) · (m + n/p))`.
pub fn lp_centering(n: usize, lp: &LpBallModel) -> f64 {
    let a = const_a(lp.p()).expect("model exponent is validated positive");
    let shape = lp.m() + n as f64 / lp.p();
    (n as f64 / lp.p()) * (a * shape).ln()
}

/// Scaling factor `sqrt(ln(n)/2)` of every standardized statistic.
pub fn scaling(n: usize) -> f64 {
    (0.5 * (n as f64).ln()).sqrt()
}

/// Stirling polynomial for `½ ln (n-1)!`: `(n/2)·ln n − n/2 − ¼·ln n`.
fn stirling_half_ln_factorial_pred(n: f64) -> f64 {
    0.5 * n * n.ln() - 0.5 * n - 0.25 * n.ln()
}

/// Additive centering constant `c(n)` of `(log_vol + c(n)) / scaling(n)`.
pub fn centering(model: &StandardizationModel, mode: CenteringMode, n: usize) -> f64 {
    let nf = n as f64;
    // The |det| part of the centering: −½ ln (n−1)!, or −½ ln n! in the
    // full-simplex case where the lifted matrix has size n+1.
    match model {
        StandardizationModel::FullSimplex => match mode {
            CenteringMode::ExactFactorial => 0.5 * ln_gamma(nf + 1.0).expect("n ≥ 2"),
            CenteringMode::StirlingPaperForm => 0.5 * nf * nf.ln() - 0.5 * nf + 0.25 * nf.ln(),
        },
        StandardizationModel::GeneralBody(body) => {
            let det_part = match mode {
                CenteringMode::ExactFactorial => 0.5 * ln_gamma(nf).expect("n ≥ 2"),
                CenteringMode::StirlingPaperForm => stirling_half_ln_factorial_pred(nf),
            };
            -body.log_vol(n) - det_part
        }
        StandardizationModel::LpBody { body, lp } => {
            let det_part = match mode {
                CenteringMode::ExactFactorial => 0.5 * ln_gamma(nf).expect("n ≥ 2"),
                CenteringMode::StirlingPaperForm => stirling_half_ln_factorial_pred(nf),
            };
            -body.log_vol(n) - det_part + lp_centering(n, lp)
        }
    }
}

/// Standardizes a log-volume: `(log_vol + c(n, model)) / sqrt(ln(n)/2)`.
///
/// Affine and strictly increasing in `log_vol` with slope `1/scaling(n)`.
pub fn standardize(
    log_vol: f64,
    n: usize,
    model: &StandardizationModel,
    mode: CenteringMode,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain { what: "standardization dimension", value: n as f64 });
    }
    if !log_vol.is_finite() {
        return Err(Error::NonFinite { what: "log_vol" });
    }
    Ok((log_vol + centering(model, mode, n)) / scaling(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dist_to_subspace, unit_normal};
    use crate::sampling::{EntryDistribution, RngStream};

    /// Shoelace-formula oracle for triangle area in the plane.
    fn shoelace_triangle(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
        0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])).abs()
    }

    /// Shoelace oracle for the area of a convex polygon given its vertices
    /// in counterclockwise order.
    fn shoelace_polygon(vertices: &[[f64; 2]]) -> f64 {
        let mut acc = 0.0;
        for i in 0..vertices.len() {
            let [x1, y1] = vertices[i];
            let [x2, y2] = vertices[(i + 1) % vertices.len()];
            acc += x1 * y2 - x2 * y1;
        }
        0.5 * acc.abs()
    }

    #[test]
    fn body_log_volumes() {
        assert_eq!(BodyModel::Cube.log_vol(7), 0.0);
        assert!((BodyModel::StandardSimplex.log_vol(4) + 24.0f64.ln()).abs() < 1e-12);
        assert!((BodyModel::SymmetricCube.log_vol(3) - 3.0 * 2.0f64.ln()).abs() < 1e-14);
        assert!(
            (BodyModel::CrossPolytope.log_vol(3) - (8.0f64 / 6.0).ln()).abs() < 1e-12
        );
        let custom = BodyModel::Custom(Arc::new(|n| 0.37 * n as f64 - 2.0));
        assert!((custom.log_vol(10) - 1.7).abs() < 1e-14);
    }

    #[test]
    fn random_body_volume_examples() {
        let e = SquareMatrix::identity(2);
        assert_eq!(log_volume_random_body(&BodyModel::Cube, &e), 0.0);
        let simplex = log_volume_random_body(&BodyModel::StandardSimplex, &e);
        assert!((simplex - 0.5f64.ln()).abs() < 1e-12);
        // conv{±e₁, ±e₂} has area 2 by the shoelace oracle
        let oracle = shoelace_polygon(&[[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]);
        assert!((oracle - 2.0).abs() < 1e-15);
        let cross = log_volume_random_body(&BodyModel::CrossPolytope, &e);
        assert!((cross - 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn singular_points_give_minus_infinity() {
        let m = SquareMatrix::from_raw(2, vec![1.0, 2.0, 2.0, 4.0]).unwrap();
        assert_eq!(log_volume_random_body(&BodyModel::Cube, &m), f64::NEG_INFINITY);
    }

    #[test]
    fn full_simplex_examples() {
        let v = log_volume_full_simplex(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])
            .unwrap();
        assert!((v - 0.5f64.ln()).abs() < 1e-12);
        // translation invariance
        let v = log_volume_full_simplex(&[vec![1.0, 1.0], vec![2.0, 1.0], vec![1.0, 2.0]])
            .unwrap();
        assert!((v - 0.5f64.ln()).abs() < 1e-12);
        // degenerate vertices
        let v = log_volume_full_simplex(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]])
            .unwrap();
        assert_eq!(v, f64::NEG_INFINITY);
        assert!(log_volume_full_simplex(&[vec![0.0, 0.0], vec![1.0]]).is_err());
    }

    #[test]
    fn full_simplex_matches_shoelace() {
        let mut rng = RngStream::new(10, 0);
        for _ in 0..100 {
            let pts: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..2).map(|_| 4.0 * rng.next_f64() - 2.0).collect())
                .collect();
            let area = shoelace_triangle(&pts[0], &pts[1], &pts[2]);
            let v = log_volume_full_simplex(&pts).unwrap();
            assert!((v - area.ln()).abs() < 1e-10, "{} vs {}", v, area.ln());
        }
    }

    #[test]
    fn pinned_simplex_consistency() {
        // full simplex with X₀ = 0 is the pinned simplex on X₁..X_n
        let mut rng = RngStream::new(11, 0);
        let n = 6;
        let sampler = EntryDistribution::Gaussian.sampler().unwrap();
        for _ in 0..20 {
            let mut pts = vec![vec![0.0; n]];
            for _ in 0..n {
                pts.push((0..n).map(|_| sampler.sample(&mut rng)).collect());
            }
            let full = log_volume_full_simplex(&pts).unwrap();
            let m = SquareMatrix::from_columns(&pts[1..]).unwrap();
            let pinned = log_volume_random_body(&BodyModel::StandardSimplex, &m);
            assert!((full - pinned).abs() < 1e-10 * full.abs().max(1.0));
        }
    }

    #[test]
    fn standardize_examples() {
        // paper-form centering cancels by construction
        let n = 3;
        let log_vol = 1.5 * 3.0f64.ln() - 1.5 - 0.25 * 3.0f64.ln();
        let model = StandardizationModel::GeneralBody(BodyModel::Cube);
        let s = standardize(log_vol, n, &model, CenteringMode::StirlingPaperForm).unwrap();
        assert!(s.abs() < 1e-13);
        // exact mode at log_vol = 0: (−½ ln Γ(3)) / sqrt(½ ln 3)
        let s = standardize(0.0, n, &model, CenteringMode::ExactFactorial).unwrap();
        assert!((s - (-0.467_614_787_950_208_4)).abs() < 1e-12);
    }

    #[test]
    fn standardize_domain_errors() {
        let model = StandardizationModel::GeneralBody(BodyModel::Cube);
        assert!(standardize(0.0, 1, &model, CenteringMode::ExactFactorial).is_err());
        assert!(
            standardize(f64::NEG_INFINITY, 5, &model, CenteringMode::ExactFactorial).is_err()
        );
    }

    #[test]
    fn standardize_is_affine_with_known_slope() {
        let model = StandardizationModel::GeneralBody(BodyModel::CrossPolytope);
        for n in [2usize, 5, 20, 100] {
            let s0 = standardize(0.0, n, &model, CenteringMode::ExactFactorial).unwrap();
            let s1 = standardize(1.0, n, &model, CenteringMode::ExactFactorial).unwrap();
            let s7 = standardize(7.0, n, &model, CenteringMode::ExactFactorial).unwrap();
            let slope = 1.0 / scaling(n);
            assert!((s1 - s0 - slope).abs() < 1e-12);
            assert!((s7 - s0 - 7.0 * slope).abs() < 1e-11);
            assert!(s1 > s0);
        }
    }

    #[test]
    fn body_constants_cancel_on_shared_points() {
        // all body rows give the same standardized value on one point set
        let bodies = [
            BodyModel::StandardSimplex,
            BodyModel::Cube,
            BodyModel::SymmetricCube,
            BodyModel::CrossPolytope,
            BodyModel::Custom(Arc::new(|n| -1.25 * n as f64 + 0.5)),
        ];
        let mut rng = RngStream::new(12, 0);
        for n in [5usize, 20, 100] {
            let sampler = EntryDistribution::Gaussian.sampler().unwrap();
            let data: Vec<f64> = (0..n * n).map(|_| sampler.sample(&mut rng)).collect();
            let m = SquareMatrix::from_raw(n, data).unwrap();
            for mode in [CenteringMode::ExactFactorial, CenteringMode::StirlingPaperForm] {
                let values: Vec<f64> = bodies
                    .iter()
                    .map(|b| {
                        let lv = log_volume_random_body(b, &m);
                        standardize(lv, n, &StandardizationModel::GeneralBody(b.clone()), mode)
                            .unwrap()
                    })
                    .collect();
                for v in &values[1..] {
                    assert!(
                        (v - values[0]).abs() <= 1e-10,
                        "n = {n}, mode {mode:?}: {v} vs {}",
                        values[0]
                    );
                }
            }
        }
    }

    #[test]
    fn centering_modes_differ_by_stirling_remainder() {
        // |exact − paper| ≤ (¼ ln 2π + 1/(24 n)) / scaling(n), and in
        // particular ≤ 1/scaling(n) for n ≥ 3
        let quarter_ln_two_pi = 0.25 * (2.0 * std::f64::consts::PI).ln();
        for n in [3usize, 5, 10, 50, 100, 1000] {
            for model in [
                StandardizationModel::FullSimplex,
                StandardizationModel::GeneralBody(BodyModel::StandardSimplex),
                StandardizationModel::GeneralBody(BodyModel::Cube),
            ] {
                let e = standardize(1.0, n, &model, CenteringMode::ExactFactorial).unwrap();
                let p = standardize(1.0, n, &model, CenteringMode::StirlingPaperForm).unwrap();
                let bound = (quarter_ln_two_pi + 1.0 / (24.0 * n as f64)) / scaling(n);
                assert!(
                    (e - p).abs() <= bound + 1e-12,
                    "n = {n}, {model:?}: gap {} vs bound {bound}",
                    (e - p).abs()
                );
                assert!((e - p).abs() <= 1.0 / scaling(n));
            }
        }
    }

    #[test]
    fn lp_centering_examples() {
        let lp = LpBallModel::new(2, 2.0, 0.0).unwrap();
        assert!((lp_centering(2, &lp) - 2.0f64.ln()).abs() < 1e-12);
        let lp = LpBallModel::new(4, 1.0, 0.0).unwrap();
        assert!((lp_centering(4, &lp) - 4.158_883_083_359_672).abs() < 1e-11);
        // digamma-based vs log-based centering per point:
        // |ψ(m + n/p) − ln(m + n/p)| ≤ 1/(2x) + 1/(12x²) at x = 51
        let x = 51.0;
        let psi = crate::specfun::digamma(x).unwrap();
        let gap = (psi - x.ln()).abs();
        assert!(gap <= 0.5 / x + 1.0 / (12.0 * x * x));
        assert!(gap >= 0.5 / x - 1.0 / (12.0 * x * x));
    }

    #[test]
    fn decomposition_identity() {
        // ln vol(Σ_n) = ln|det(Y₁..Y_{n+1})| − ln dist(Y_{n+1}, L)
        //               + ln dist(U, L) − ln n!
        let mut rng = RngStream::new(13, 0);
        let n = 10;
        let sampler = EntryDistribution::Gaussian.sampler().unwrap();
        for _ in 0..100 {
            let points: Vec<Vec<f64>> = (0..n + 1)
                .map(|_| (0..n).map(|_| sampler.sample(&mut rng)).collect())
                .collect();
            let lhs = log_volume_full_simplex(&points).unwrap();

            // rows 1..n of the lifted matrix (X₀'|…|X_n'); row n+1 is all ones
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|r| points.iter().map(|p| p[r]).collect())
                .collect();
            let ones = vec![1.0; n + 1];
            let fresh: Vec<f64> = (0..n + 1).map(|_| sampler.sample(&mut rng)).collect();

            let normal = unit_normal(&rows).unwrap();
            let dist_fresh = dist_to_subspace(&fresh, &normal).unwrap();
            let dist_ones = dist_to_subspace(&ones, &normal).unwrap();

            let mut cols = rows.clone();
            cols.push(fresh.clone());
            let det = log_abs_det(&SquareMatrix::from_columns(&cols).unwrap());

            let rhs = det.log_abs - dist_fresh.ln() + dist_ones.ln() - ln_factorial(n);
            assert!((lhs - rhs).abs() <= 1e-8, "residual {}", (lhs - rhs).abs());
        }
    }
}
