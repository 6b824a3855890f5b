use log::warn;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Least-squares slope of log e against log h.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
    pub points: usize,
}

pub fn fit_rates(hs: &[f64], errors: &[f64]) -> Result<RateFit> {
    if hs.len() != errors.len() {
        return Err(Error::Analysis("mesh sizes and errors differ in length".into()));
    }
    let mut pts = Vec::new();
    for (i, (&h, &e)) in hs.iter().zip(errors).enumerate() {
        if e > 0.0 && h > 0.0 {
            pts.push((h.ln(), e.ln()));
        } else {
            warn!("rate fit: excluding level {i} (h = {h:e}, error = {e:e})");
        }
    }
    if pts.len() < 3 {
        return Err(Error::Analysis(format!("rate fit needs at least 3 positive points, got {}", pts.len())));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Analysis("rate fit needs distinct mesh sizes".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(RateFit { slope, intercept, residual, points: pts.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let hs = [1.0, 0.5, 0.25, 0.125];
        let e2: Vec<f64> = hs.iter().map(|h| h * h).collect();
        assert!((fit_rates(&hs, &e2).unwrap().slope - 2.0).abs() < 1e-12);
        let e1: Vec<f64> = hs.iter().map(|h| 3.0 * h).collect();
        assert!((fit_rates(&hs, &e1).unwrap().slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noisy_quadratic() {
        let hs = [0.1, 0.05, 0.025, 0.0125];
        let e: Vec<f64> = hs.iter().enumerate().map(|(i, h)| h * h + if i % 2 == 0 { 1e-12 } else { -1e-12 }).collect();
        assert!((fit_rates(&hs, &e).unwrap().slope - 2.0).abs() < 1e-3);
    }

    #[test]
    fn zero_errors_excluded() {
        let hs = [1.0, 0.5, 0.25, 0.125];
        let e = [1.0, 0.25, 0.0625, 0.0];
        let fit = fit_rates(&hs, &e).unwrap();
        assert_eq!(fit.points, 3);
        assert!(fit_rates(&hs[..3], &[1.0, 0.0, 0.0]).is_err());
    }
}
