use serde::Serialize;

use crate::error::{Error, Result};

/// Minimum number of positive samples for a rate fit.
pub const MIN_RATE_PAIRS: usize = 4;
/// With at least this many samples the smallest ones are dropped.
pub const DISCARD_THRESHOLD: usize = 8;
pub const DISCARD_COUNT: usize = 3;

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest `|ln y - fitted|`.
    pub residual: f64,
    pub samples: usize,
}

pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<PowerFit> {
    if xs.len() != ys.len() {
        return Err(Error::invalid("fit_loglog: length mismatch"));
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::invalid("fit_loglog: samples must be positive and finite"));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let mean_x = lx.iter().sum::<f64>() / m;
    let mean_y = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("fit_loglog: abscissae are all equal"));
    }
    let sxy: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    Ok(PowerFit {
        slope,
        intercept,
        residual,
        samples: xs.len(),
    })
}

/// `error ~ constant * n^(-exponent)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFit {
    pub exponent: f64,
    pub constant: f64,
    pub residual: f64,
    /// Pairs entering the fit.
    pub pairs: Vec<(usize, f64)>,
    /// Pre-asymptotic pairs left out.
    pub discarded: Vec<(usize, f64)>,
    /// Degrees with an exactly zero error.
    pub exact_zeros: Vec<usize>,
}

impl RateFit {
    pub fn predict(&self, n: usize) -> f64 {
        self.constant * (n as f64).powf(-self.exponent)
    }
}

/// Fits `ln error = ln C - alpha ln n`. Exact zeros are reported, not fitted;
/// with [`DISCARD_THRESHOLD`] or more positive pairs the [`DISCARD_COUNT`]
/// smallest `n` are dropped.
pub fn fit_rate(pairs: &[(usize, f64)]) -> Result<RateFit> {
    if pairs.iter().any(|(n, e)| *n == 0 || !(*e >= 0.0) || !e.is_finite()) {
        return Err(Error::invalid(
            "fit_rate: degrees must be positive and errors finite and nonnegative",
        ));
    }
    let exact_zeros: Vec<usize> = pairs.iter().filter(|p| p.1 == 0.0).map(|p| p.0).collect();
    let mut positive: Vec<(usize, f64)> = pairs.iter().copied().filter(|p| p.1 > 0.0).collect();
    if positive.len() < MIN_RATE_PAIRS {
        return Err(Error::InsufficientData {
            needed: MIN_RATE_PAIRS,
            got: positive.len(),
        });
    }
    positive.sort_by_key(|p| p.0);
    let discarded = if positive.len() >= DISCARD_THRESHOLD {
        positive.drain(..DISCARD_COUNT).collect()
    } else {
        Vec::new()
    };
    let xs: Vec<f64> = positive.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = positive.iter().map(|p| p.1).collect();
    let fit = fit_loglog(&xs, &ys)?;
    Ok(RateFit {
        exponent: -fit.slope,
        constant: fit.intercept.exp(),
        residual: fit.residual,
        pairs: positive,
        discarded,
        exact_zeros,
    })
}
