//! Rate estimates over residual series indexed by iteration.

use std::ops::RangeInclusive;

/// Least-squares slope of `ln r_n` against `n` for `n` in `range`.
/// `None` if the range is shorter than two points, runs past the series, or
/// hits a non-positive residual.
pub fn log_slope(residuals: &[f64], range: RangeInclusive<usize>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = range
        .map(|n| residuals.get(n).filter(|r| **r > 0.0).map(|r| (n as f64, r.ln())))
        .collect::<Option<_>>()?;
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

/// `r_n / r_{n-1}` for `n ≥ 1`.
pub fn step_ratios(residuals: &[f64]) -> Vec<f64> {
    residuals.windows(2).map(|w| w[1] / w[0]).collect()
}

/// `r_{n-1} / r_n` for `n ≥ 1`: how many times smaller iteration `n` made
/// the residual.
pub fn reduction_factors(residuals: &[f64]) -> Vec<f64> {
    residuals.windows(2).map(|w| w[0] / w[1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_geometric_series() {
        let r: Vec<f64> = (0..12).map(|n| 3.0 * 0.5f64.powi(n)).collect();
        let s = log_slope(&r, 2..=10).unwrap();
        assert!((s - 0.5f64.ln()).abs() < 1e-12);
        assert_eq!(log_slope(&r, 10..=13), None);
        assert_eq!(log_slope(&[1.0, 0.0, 0.1], 0..=2), None);
    }

    #[test]
    fn ratios() {
        assert_eq!(step_ratios(&[4.0, 2.0, 1.0]), vec![0.5, 0.5]);
        assert_eq!(reduction_factors(&[4.0, 2.0, 1.0]), vec![2.0, 2.0]);
    }
}
