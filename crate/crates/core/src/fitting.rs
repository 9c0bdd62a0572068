//! Power-law regression by ordinary least squares on logarithms, and
//! Pearson correlation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("log domain: coordinates must be positive, got ({0}, {1})")]
    LogDomain(f64, f64),
    #[error("degenerate abscissa: all x values are equal")]
    DegenerateAbscissa,
    #[error("degenerate response: {0}")]
    DegenerateResponse(&'static str),
    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("zero variance in series")]
    ZeroVariance,
    #[error("x must be positive, got {0}")]
    NonPositive(f64),
}

/// `y = a * x^b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLaw {
    pub a: f64,
    pub b: f64,
}

impl PowerLaw {
    pub fn new(a: f64, b: f64) -> Self {
        PowerLaw { a, b }
    }

    pub fn predict(&self, x: f64) -> Result<f64, FitError> {
        if x.is_nan() || x <= 0.0 {
            return Err(FitError::NonPositive(x));
        }
        Ok(self.a * x.powf(self.b))
    }
}

/// A fitted power law with its log-space goodness of fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub a: f64,
    pub b: f64,
    /// Coefficient of determination of `ln y` on `ln x`.
    pub r2: f64,
    pub n_points: usize,
}

impl PowerFit {
    pub fn law(&self) -> PowerLaw {
        PowerLaw::new(self.a, self.b)
    }

    pub fn predict(&self, x: f64) -> Result<f64, FitError> {
        self.law().predict(x)
    }
}

/// Fits `y = a * x^b` by regressing `ln y` on `ln x`.
pub fn power_fit(points: &[(f64, f64)]) -> Result<PowerFit, FitError> {
    if points.len() < 2 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(FitError::LogDomain(x, y));
    }
    if points.iter().all(|(x, _)| *x == points[0].0) {
        return Err(FitError::DegenerateAbscissa);
    }

    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(lx, ly) in &logs {
        let dx = lx - mean_x;
        let dy = ly - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    let b = sxy / sxx;
    let intercept = mean_y - b * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|&(lx, ly)| {
            let e = ly - (intercept + b * lx);
            e * e
        })
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };

    Ok(PowerFit {
        a: intercept.exp(),
        b,
        r2: r2.clamp(0.0, 1.0),
        n_points: points.len(),
    })
}

pub fn predict(fit: &PowerFit, x: f64) -> Result<f64, FitError> {
    fit.predict(x)
}

/// Sample Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, FitError> {
    if xs.len() != ys.len() {
        return Err(FitError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(FitError::TooFewPoints(xs.len()));
    }
    let constant = |s: &[f64]| s.iter().all(|v| *v == s[0]);
    if constant(xs) || constant(ys) {
        return Err(FitError::ZeroVariance);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(FitError::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
