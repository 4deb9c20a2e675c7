//! Scalar special functions: `ln Γ`, digamma `ψ`, trigamma `ψ₁`, and the
//! standard normal CDF `Φ`.
//!
//! All four are implemented in-repo (no external math library) so that the
//! numerical behaviour is pinned down bit-for-bit:
//!
//! * `ln Γ`, `ψ`, `ψ₁` use upward recurrence to shift the argument above 10,
//!   then the Stirling/asymptotic series with Bernoulli-number coefficients
//!   (A&S 6.1.40–6.4.12). Truncation error at the shift point is below
//!   2e-15, far inside the contracts.
//! * `Φ` goes through a rational approximation of the complementary error
//!   function in the style of Cody's CALERF, accurate to ~1e-16 relative.
//!   Kolmogorov distances computed on 1e4–1e5 samples need CDF error well
//!   below `1/sqrt(N)`, which this satisfies with orders of margin.

// Coefficient tables are transcribed with their published digits.
#![allow(clippy::excessive_precision)]

use crate::error::Error;
use crate::Result;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_74;

/// Arguments below this are shifted upward before the asymptotic series.
const ASYMPT_MIN: f64 = 10.0;

/// `B_{2j} / (2j (2j-1))` for the Stirling series of `ln Γ`.
const LN_GAMMA_SERIES: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `B_{2j} / (2j)` for the asymptotic series of `ψ`.
const DIGAMMA_SERIES: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// `B_{2j}` for the asymptotic series of `ψ₁`.
const TRIGAMMA_SERIES: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn check_positive(what: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite { what });
    }
    if x <= 0.0 {
        return Err(Error::Domain { what, value: x });
    }
    Ok(())
}

/// Natural log of the gamma function, `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive("ln_gamma argument", x)?;
    // Shift into the asymptotic region: ln Γ(x) = ln Γ(x + k) − Σ ln(x + i).
    let mut shift = 0.0;
    let mut z = x;
    while z < ASYMPT_MIN {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in LN_GAMMA_SERIES {
        series += c * power;
        power *= inv2;
    }
    Ok((z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series - shift)
}

/// `ln n!` evaluated through `ln Γ(n + 1)`; never by iterated multiplication,
/// which overflows for `n ≥ 171`.
pub fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0).expect("n + 1 is positive")
}

/// Digamma function `ψ(x) = d/dx ln Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("digamma argument", x)?;
    // ψ(x) = ψ(x + k) − Σ 1/(x + i)
    let mut shift = 0.0;
    let mut z = x;
    while z < ASYMPT_MIN {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv2;
    for c in DIGAMMA_SERIES {
        series += c * power;
        power *= inv2;
    }
    Ok(z.ln() - 0.5 * inv - series - shift)
}

/// Trigamma function `ψ₁(x) = d/dx ψ(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("trigamma argument", x)?;
    // ψ₁(x) = ψ₁(x + k) + Σ 1/(x + i)²
    let mut shift = 0.0;
    let mut z = x;
    while z < ASYMPT_MIN {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv * inv2;
    for c in TRIGAMMA_SERIES {
        series += c * power;
        power *= inv2;
    }
    Ok(inv + 0.5 * inv2 + series + shift)
}

/// Standard normal CDF `Φ(t)`.
///
/// Total in `t`: saturates to 0/1 for large `|t|`, propagates NaN. The
/// identity `Φ(t) + Φ(−t) = 1` holds exactly because both sides share the
/// same `erfc` evaluation.
pub fn std_normal_cdf(t: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    let y = t * std::f64::consts::FRAC_1_SQRT_2;
    if t >= 0.0 {
        1.0 - 0.5 * erfc(y)
    } else {
        0.5 * erfc(-y)
    }
}

// Rational approximations of erfc on [0, ∞), after W. J. Cody's CALERF.
// Coefficient sets for the three ranges [0, 0.46875], (0.46875, 4], (4, ∞).

const ERF_A: [f64; 5] = [
    3.161_123_743_870_565_6e0,
    1.138_641_541_510_501_56e2,
    3.774_852_376_853_020_2e2,
    3.209_377_589_138_469_47e3,
    1.857_777_061_846_031_53e-1,
];
const ERF_B: [f64; 4] = [
    2.360_129_095_234_412_09e1,
    2.440_246_379_344_441_73e2,
    1.282_616_526_077_372_28e3,
    2.844_236_833_439_170_62e3,
];
const ERFC_C: [f64; 9] = [
    5.641_884_969_886_700_9e-1,
    8.883_149_794_388_375_94e0,
    6.611_919_063_714_162_95e1,
    2.986_351_381_974_001_31e2,
    8.819_522_212_417_690_9e2,
    1.712_047_612_634_070_58e3,
    2.051_078_377_826_071_47e3,
    1.230_339_354_797_997_25e3,
    2.153_115_354_744_038_46e-8,
];
const ERFC_D: [f64; 8] = [
    1.574_492_611_070_983_47e1,
    1.176_939_508_913_124_99e2,
    5.371_811_018_620_098_58e2,
    1.621_389_574_566_690_19e3,
    3.290_799_235_733_459_63e3,
    4.362_619_090_143_247_16e3,
    3.439_367_674_143_721_64e3,
    1.230_339_354_803_749_42e3,
];
const ERFC_P: [f64; 6] = [
    3.053_266_349_612_323_44e-1,
    3.603_448_999_498_044_39e-1,
    1.257_817_261_112_292_46e-1,
    1.608_378_514_874_227_66e-2,
    6.587_491_615_298_378_03e-4,
    1.631_538_713_730_209_78e-2,
];
const ERFC_Q: [f64; 5] = [
    2.568_520_192_289_822_42e0,
    1.872_952_849_923_460_47e0,
    5.279_051_029_514_284_12e-1,
    6.051_834_131_244_131_91e-2,
    2.335_204_976_268_691_85e-3,
];
const INV_SQRT_PI: f64 = 5.641_895_835_477_562_9e-1;

/// Complementary error function on the whole real line.
fn erfc(x: f64) -> f64 {
    let y = x.abs();
    let result = if y <= 0.46875 {
        let ysq = y * y;
        let mut num = ERF_A[4] * ysq;
        let mut den = ysq;
        for i in 0..3 {
            num = (num + ERF_A[i]) * ysq;
            den = (den + ERF_B[i]) * ysq;
        }
        // erf on this range; convert below.
        let erf = x * (num + ERF_A[3]) / (den + ERF_B[3]);
        return 1.0 - erf;
    } else if y <= 4.0 {
        let mut num = ERFC_C[8] * y;
        let mut den = y;
        for i in 0..7 {
            num = (num + ERFC_C[i]) * y;
            den = (den + ERFC_D[i]) * y;
        }
        let r = (num + ERFC_C[7]) / (den + ERFC_D[7]);
        scaled_exp_neg_sq(y) * r
    } else if y < 26.6 {
        let ysq = 1.0 / (y * y);
        let mut num = ERFC_P[5] * ysq;
        let mut den = ysq;
        for i in 0..4 {
            num = (num + ERFC_P[i]) * ysq;
            den = (den + ERFC_Q[i]) * ysq;
        }
        let r = ysq * (num + ERFC_P[4]) / (den + ERFC_Q[4]);
        scaled_exp_neg_sq(y) * (INV_SQRT_PI - r) / y
    } else {
        0.0
    };
    if x < 0.0 {
        2.0 - result
    } else {
        result
    }
}

/// `exp(-y²)` with the argument split to avoid rounding in `y²` for large y.
fn scaled_exp_neg_sq(y: f64) -> f64 {
    let ysq = (y * 16.0).trunc() / 16.0;
    let del = (y - ysq) * (y + ysq);
    (-ysq * ysq).exp() * (-del).exp()
}
