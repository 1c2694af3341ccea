//! Sampled monotonicity scan of `g_n = f^{(n+1)} / (f^{(n)} f^{(n+2)})`,
//! `f(x) = x β_k(x)`.

use serde::Serialize;

use super::{GridSpec, Verdict};
use crate::beta::beta_k_deriv;
use crate::error::{Error, Result};
use crate::kfun::KScale;

/// Relative cancellation level below which a derivative of `f` counts as zero.
const CANCELLATION: f64 = 1e-12;

/// `f^{(j)}(x) = x β_k^{(j)}(x) + j β_k^{(j−1)}(x)` and the size of the
/// larger of its two parts.
pub fn f_derivative(k: KScale, j: u32, x: f64) -> Result<(f64, f64)> {
    let a = x * beta_k_deriv(k, j, x)?;
    let b = if j == 0 {
        0.0
    } else {
        f64::from(j) * beta_k_deriv(k, j - 1, x)?
    };
    Ok((a + b, a.abs().max(b.abs())))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub x: f64,
    /// `None` when a factor of the denominator is lost to cancellation.
    pub g: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    StrictlyIncreasing,
    StrictlyDecreasing,
    Neither,
    /// Fewer than two usable samples.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanTable {
    pub n: u32,
    pub rows: Vec<ScanRow>,
    pub monotonicity: Monotonicity,
    /// First sample at which the direction set by the first step reverses.
    pub first_violation: Option<f64>,
}

fn classify(rows: &[ScanRow]) -> (Monotonicity, Option<f64>) {
    let samples: Vec<(f64, f64)> = rows.iter().filter_map(|r| r.g.map(|g| (r.x, g))).collect();
    if samples.len() < 2 {
        return (Monotonicity::Undetermined, None);
    }
    let first = samples[1].1 - samples[0].1;
    let direction = if first > 0.0 {
        Monotonicity::StrictlyIncreasing
    } else if first < 0.0 {
        Monotonicity::StrictlyDecreasing
    } else {
        return (Monotonicity::Neither, Some(samples[1].0));
    };
    for w in samples.windows(2) {
        let d = w[1].1 - w[0].1;
        let keeps = match direction {
            Monotonicity::StrictlyIncreasing => d > 0.0,
            _ => d < 0.0,
        };
        if !keeps {
            return (Monotonicity::Neither, Some(w[1].0));
        }
    }
    (direction, None)
}

/// Tables of `g_n` for `n = 0..=n_max` over `grid.x_values` (taken as
/// absolute `x`, positive and increasing). `n_max ≤ 4`.
///
/// This is numerical evidence only; the monotonicity of `g_n` is open.
pub fn openproblem_scan(k: KScale, n_max: u32, grid: &GridSpec) -> Result<Vec<ScanTable>> {
    if n_max > 4 {
        return Err(Error::Parameter(format!(
            "openproblem_scan: n_max must be <= 4, got {n_max}"
        )));
    }
    let xs = &grid.x_values;
    if xs.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::Parameter("openproblem_scan: x values must be positive".into()));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Parameter("openproblem_scan: x values must be increasing".into()));
    }
    (0..=n_max)
        .map(|n| {
            let rows = xs
                .iter()
                .map(|&x| {
                    let (lo, lo_size) = f_derivative(k, n, x)?;
                    let (mid, _) = f_derivative(k, n + 1, x)?;
                    let (hi, hi_size) = f_derivative(k, n + 2, x)?;
                    let lost = |v: f64, size: f64| v.abs() <= CANCELLATION * size || v == 0.0;
                    Ok(if lost(lo, lo_size) || lost(hi, hi_size) {
                        ScanRow {
                            x,
                            g: None,
                            verdict: Verdict::Skip,
                        }
                    } else {
                        ScanRow {
                            x,
                            g: Some(mid / (lo * hi)),
                            verdict: Verdict::Pass,
                        }
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let (monotonicity, first_violation) = classify(&rows);
            Ok(ScanTable {
                n,
                rows,
                monotonicity,
                first_violation,
            })
        })
        .collect()
}
