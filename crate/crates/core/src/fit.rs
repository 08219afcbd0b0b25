//! Ordinary least squares on log-log data, for scaling-law estimates.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("non-positive value at point {index}: ({x}, {y})")]
    NonPositive { index: usize, x: f64, y: f64 },
}

/// Power-law fit `y ~ exp(intercept) * x^slope`.
#[derive(Clone, Copy, Debug)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fits `log y = slope * log x + intercept` by ordinary least squares.
/// All inputs must be strictly positive.
pub fn fit_scaling(xs: &[f64], ys: &[f64]) -> Result<FitResult, FitError> {
    assert_eq!(xs.len(), ys.len(), "x and y columns differ in length");
    if xs.len() < 3 {
        return Err(FitError::TooFewPoints(xs.len()));
    }
    for (index, (&x, &y)) in xs.iter().zip(ys).enumerate() {
        if x <= 0.0 || y <= 0.0 {
            return Err(FitError::NonPositive { index, x, y });
        }
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| (b - (slope * a + intercept)).powi(2))
        .sum();
    let ss_tot: f64 = ly.iter().map(|b| (b - my).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
    })
}
