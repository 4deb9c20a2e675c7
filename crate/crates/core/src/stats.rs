//! Empirical-distribution machinery: Kolmogorov distances to the standard
//! normal and half-normal laws, moments, and quantiles.
//!
//! The Kolmogorov statistic is the two-sided sup-distance between the
//! empirical CDF and the reference CDF; the sup over the real line is
//! attained at data points, so only the sorted values enter. Ties are
//! handled by the sorted-index formula unchanged, which is correct for the
//! sup statistic (discrete entry laws do produce ties in intermediate
//! statistics).
//!
//! No p-values are computed anywhere: acceptance thresholds compare raw KS
//! values against fixed tolerances.

use crate::error::Error;
use crate::specfun::std_normal_cdf;
use crate::Result;

/// A sorted sample of finite reals plus an excluded-trial count carried
/// through from the producing experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    excluded_count: usize,
}

impl Sample {
    /// Sorts the values on construction; rejects non-finite entries.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "sample value" });
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite values are ordered"));
        Ok(Sample { values, excluded_count: 0 })
    }

    pub fn with_excluded(mut self, excluded_count: usize) -> Self {
        self.excluded_count = excluded_count;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn excluded_count(&self) -> usize {
        self.excluded_count
    }

    /// Values in nondecreasing order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> Result<f64> {
        if self.values.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(self.values.iter().sum::<f64>() / self.values.len() as f64)
    }

    /// Unbiased variance; requires at least two values.
    pub fn variance(&self) -> Result<f64> {
        if self.values.len() < 2 {
            return Err(Error::InvalidSample("variance requires at least two values"));
        }
        let mean = self.mean()?;
        let ss: f64 = self.values.iter().map(|v| (v - mean) * (v - mean)).sum();
        Ok(ss / (self.values.len() - 1) as f64)
    }

    /// Empirical quantile by order statistic with linear interpolation
    /// (position `h = p·(N−1)` between sorted neighbours).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if self.values.is_empty() {
            return Err(Error::EmptySample);
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain { what: "quantile probability", value: p });
        }
        let h = p * (self.values.len() - 1) as f64;
        let lo = h.floor() as usize;
        let hi = h.ceil() as usize;
        let frac = h - lo as f64;
        Ok(self.values[lo] + frac * (self.values[hi] - self.values[lo]))
    }

    pub fn summarize(&self) -> Result<Summary> {
        Ok(Summary {
            mean: self.mean()?,
            variance: self.variance().ok(),
        })
    }
}

/// Mean and (when defined) unbiased variance; quantiles stay available
/// through [`Sample::quantile`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub variance: Option<f64>,
}

/// Two-sided Kolmogorov distance against a reference CDF evaluated on a
/// sorted sample.
fn ks_distance(values: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = values.len() as f64;
    let mut sup = 0.0f64;
    for (i, &x) in values.iter().enumerate() {
        let f = cdf(x);
        let upper = ((i + 1) as f64 / n - f).abs();
        let lower = (i as f64 / n - f).abs();
        sup = sup.max(upper).max(lower);
    }
    sup
}

/// Kolmogorov distance from the sample to `N(0,1)`.
pub fn ks_distance_to_std_normal(sample: &Sample) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    Ok(ks_distance(sample.values(), std_normal_cdf))
}

/// Kolmogorov distance from a nonnegative sample to `|N(0,1)|`, whose CDF is
/// `t ↦ 2Φ(t) − 1` on `t ≥ 0`.
pub fn ks_distance_to_half_normal(sample: &Sample) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample.values()[0] < 0.0 {
        return Err(Error::InvalidSample("half-normal comparison requires values ≥ 0"));
    }
    Ok(ks_distance(sample.values(), |t| 2.0 * std_normal_cdf(t) - 1.0))
}
