use super::summary::SummaryTable;
use crate::error::{param, Result};
use crate::motif::MotifKind;
use serde::{Deserialize, Serialize};

/// Least-squares line through `(log n, log mean)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Ordinary least squares of `ys` on `xs`; needs at least 3 points with distinct `x`.
pub fn ols(xs: &[f64], ys: &[f64]) -> Result<ScalingFit> {
    if xs.len() != ys.len() {
        return param("x and y must have equal length");
    }
    let m = xs.len();
    if m < 3 {
        return param(format!("a scaling fit needs at least 3 points, got {m}"));
    }
    let mf = m as f64;
    let mx = xs.iter().sum::<f64>() / mf;
    let my = ys.iter().sum::<f64>() / mf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if !(sxx > 0.0) {
        return param("x values are all equal");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 };
    Ok(ScalingFit {
        slope,
        intercept,
        slope_stderr: (ssr / (mf - 2.0) / sxx).sqrt(),
        r_squared,
        points: m,
    })
}

/// Fits `log mean ~ log n` over the rows with the given `k`, `tau` and kind and a positive mean.
pub fn scaling_fit(
    table: &SummaryTable,
    k: usize,
    tau: f64,
    kind: MotifKind,
) -> Result<ScalingFit> {
    let mut pts: Vec<(usize, f64)> = table
        .rows
        .iter()
        .filter(|r| {
            r.k == k
                && r.kind == kind
                && (r.tau - tau).abs() <= 1e-12
                && r.mean > 0.0
                && r.mean.is_finite()
        })
        .map(|r| (r.n, r.mean))
        .collect();
    pts.sort_by_key(|p| p.0);
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return param("several rows share an n value (mixed kernels?)");
    }
    let xs: Vec<f64> = pts.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    ols(&xs, &ys)
}
