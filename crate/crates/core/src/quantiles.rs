//! Sample quantiles, Gaussian kernel density estimation, and the standard
//! error of a quantile estimate.
//!
//! Quantile values use linear interpolation of order statistics at rank
//! `h = (n - 1) q + 1` (1-indexed). The standard error of the `q`th quantile
//! is `sqrt(q (1 - q)) / (sqrt(n) p(v))` with the density `p` at the
//! estimate taken from a Gaussian KDE.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fr, fu, Scalar};

/// Floor applied to KDE densities inside the standard-error division, so
/// tail quantiles with near-zero density stay finite.
const DENSITY_FLOOR: f64 = 1e-12;

/// Relative floor for the KDE bandwidth on near-constant samples.
const BANDWIDTH_FLOOR_FRAC: f64 = 1e-6;

/// Quantile fractions of interest, strictly increasing within (0, 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileSpec<T> {
    fractions: Vec<T>,
}

impl<T: Scalar> QuantileSpec<T> {
    pub fn new(fractions: Vec<T>) -> Result<Self> {
        if fractions.is_empty() {
            return Err(Error::InvalidFractions("empty fraction list".into()));
        }
        for w in fractions.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidFractions(
                    "fractions must be strictly increasing".into(),
                ));
            }
        }
        if !(fractions[0] > T::zero()) || !(fractions[fractions.len() - 1] < T::one()) {
            return Err(Error::InvalidFractions(
                "fractions must lie in the open interval (0, 1)".into(),
            ));
        }
        Ok(QuantileSpec { fractions })
    }

    /// Deciles 0.1 ..= 0.9.
    pub fn deciles() -> Self {
        let fractions = (1..=9).map(|k| fr::<T>(k as f64 / 10.0)).collect();
        QuantileSpec { fractions }
    }

    /// Quartiles 0.25, 0.5, 0.75.
    pub fn quartiles() -> Self {
        QuantileSpec {
            fractions: vec![fr(0.25), fr(0.5), fr(0.75)],
        }
    }

    /// Upper extrema 0.9, 0.95, 0.99.
    pub fn upper_extrema() -> Self {
        QuantileSpec {
            fractions: vec![fr(0.9), fr(0.95), fr(0.99)],
        }
    }

    pub fn fractions(&self) -> &[T] {
        &self.fractions
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }
}

/// Quantile estimate over one sample: values and, when computed, standard
/// errors per fraction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileEstimate<T> {
    pub fractions: Vec<T>,
    pub values: Vec<T>,
    pub standard_errors: Option<Vec<T>>,
    /// Number of sample values the estimate was computed from.
    pub source_size: usize,
}

fn check_finite<T: Scalar>(values: &[T]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptyInput("quantile sample".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("quantile sample".into()));
    }
    Ok(())
}

fn sorted_copy<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut xs = values.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite values compare"));
    xs
}

/// Quantile value at fraction `q` over an ascending-sorted sample.
#[inline]
pub fn quantile_of_sorted<T: Scalar>(sorted: &[T], q: T) -> T {
    let n = sorted.len();
    let h = fu::<T>(n - 1) * q + T::one();
    let lo = h.floor();
    let frac = h - lo;
    let lo_i = crate::scalar::to_f64(lo) as usize - 1;
    let hi_i = (lo_i + 1).min(n - 1);
    sorted[lo_i] + frac * (sorted[hi_i] - sorted[lo_i])
}

/// Estimate quantile values for every fraction in `spec` (no standard
/// errors). Values are interpolated order statistics of the sorted sample.
pub fn estimate_quantiles<T: Scalar>(
    values: &[T],
    spec: &QuantileSpec<T>,
) -> Result<QuantileEstimate<T>> {
    check_finite(values)?;
    let sorted = sorted_copy(values);
    let out = spec
        .fractions()
        .iter()
        .map(|&q| quantile_of_sorted(&sorted, q))
        .collect();
    Ok(QuantileEstimate {
        fractions: spec.fractions().to_vec(),
        values: out,
        standard_errors: None,
        source_size: values.len(),
    })
}

/// Scott's-rule Gaussian KDE bandwidth: `n^(-1/5) * sd`, floored at a small
/// multiple of the sample range. Errors unless the sample has at least two
/// distinct values.
pub fn kde_bandwidth<T: Scalar>(values: &[T]) -> Result<T> {
    check_finite(values)?;
    let n = values.len();
    let first = values[0];
    let distinct = values.iter().any(|&v| v != first);
    if n < 2 || !distinct {
        return Err(Error::DegenerateSample {
            distinct: if n == 0 { 0 } else { 1 },
        });
    }
    let nf = fu::<T>(n);
    let mean = values.iter().fold(T::zero(), |a, &v| a + v) / nf;
    let ss = values.iter().fold(T::zero(), |a, &v| {
        let d = v - mean;
        a + d * d
    });
    let sd = (ss / fu::<T>(n - 1)).sqrt();
    let (mut lo, mut hi) = (values[0], values[0]);
    for &v in values {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    let floor = fr::<T>(BANDWIDTH_FLOOR_FRAC) * (hi - lo);
    let scott = sd * nf.powf(fr(-0.2));
    Ok(if scott > floor { scott } else { floor })
}

/// Gaussian KDE density at `at`, with an explicit bandwidth.
pub fn kde_density_with_bandwidth<T: Scalar>(values: &[T], bandwidth: T, at: T) -> T {
    let inv_sqrt_2pi = fr::<T>(1.0 / (2.0 * std::f64::consts::PI).sqrt());
    let n = fu::<T>(values.len());
    let mut acc = T::zero();
    for &x in values {
        let u = (at - x) / bandwidth;
        acc += (-(u * u) / fr::<T>(2.0)).exp();
    }
    acc * inv_sqrt_2pi / (n * bandwidth)
}

/// Gaussian KDE density at `at` using the Scott's-rule bandwidth.
pub fn kde_density<T: Scalar>(values: &[T], at: T) -> Result<T> {
    let b = kde_bandwidth(values)?;
    Ok(kde_density_with_bandwidth(values, b, at))
}

/// Standard error of the `q`th quantile given the sample size and the
/// density at the quantile estimate: `sqrt(q (1 - q)) / (sqrt(n) p)`.
/// The density is floored to keep the division finite.
pub fn standard_error_from_density<T: Scalar>(q: T, n: usize, density: T) -> T {
    let p = if density > fr(DENSITY_FLOOR) {
        density
    } else {
        fr(DENSITY_FLOOR)
    };
    (q * (T::one() - q)).sqrt() / (fu::<T>(n).sqrt() * p)
}

/// Standard errors for every fraction in `spec`.
pub fn quantile_standard_error<T: Scalar>(
    values: &[T],
    spec: &QuantileSpec<T>,
) -> Result<Vec<T>> {
    let b = kde_bandwidth(values)?;
    let sorted = sorted_copy(values);
    let n = values.len();
    Ok(spec
        .fractions()
        .iter()
        .map(|&q| {
            let v = quantile_of_sorted(&sorted, q);
            let p = kde_density_with_bandwidth(values, b, v);
            standard_error_from_density(q, n, p)
        })
        .collect())
}

/// Quantile values and standard errors in one pass.
pub fn estimate_quantiles_with_se<T: Scalar>(
    values: &[T],
    spec: &QuantileSpec<T>,
) -> Result<QuantileEstimate<T>> {
    let mut est = estimate_quantiles(values, spec)?;
    est.standard_errors = Some(quantile_standard_error(values, spec)?);
    Ok(est)
}
