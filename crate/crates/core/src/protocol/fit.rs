use crate::error::{Error, Result};

const MIN_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialFit {
    /// Rate in `C(n) = 1 − e^{−κ n}`.
    pub kappa: f64,
    /// Centered coefficient of determination of the log-linear fit.
    pub r_squared: f64,
    pub points_used: usize,
}

/// Least-squares fit of `log(1 − C(n)) = −κ n` through the origin, over
/// points with `1 − C(n) > 1e-12`.
pub fn fit_exponential(curve: &[(usize, f64)]) -> Result<ExponentialFit> {
    // saturated values within rounding of 1 are accepted and dropped below
    if let Some(&(n, c)) = curve.iter().find(|(_, c)| !(0.0..=1.0 + MIN_GAP).contains(c)) {
        return Err(Error::param(format!("concurrence at step {n} is {c}, outside [0, 1]")));
    }
    let pts: Vec<(f64, f64)> =
        curve.iter().filter(|(_, c)| 1.0 - c > MIN_GAP).map(|&(n, c)| (n as f64, (1.0 - c).ln())).collect();
    if pts.len() < 3 {
        return Err(Error::param(format!("exponential fit needs at least 3 usable points, got {}", pts.len())));
    }
    let sxx: f64 = pts.iter().map(|(x, _)| x * x).sum();
    if sxx == 0.0 {
        return Err(Error::param("exponential fit needs at least one nonzero step"));
    }
    let sxy: f64 = pts.iter().map(|(x, y)| x * y).sum();
    let slope = sxy / sxx;
    let mean = pts.iter().map(|(_, y)| y).sum::<f64>() / pts.len() as f64;
    let ss_tot: f64 = pts.iter().map(|(_, y)| (y - mean).powi(2)).sum();
    let ss_res: f64 = pts.iter().map(|(x, y)| (y - slope * x).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(ExponentialFit { kappa: -slope, r_squared, points_used: pts.len() })
}
