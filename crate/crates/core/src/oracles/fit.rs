//! Constant-factor and constant-offset fits between two sides of an identity.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitMode {
    /// `lhs = c · rhs`
    Ratio,
    /// `lhs = rhs + c`
    Offset,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscrepancyFit {
    pub mode: FitMode,
    pub constant: f64,
    pub residual_rms: f64,
    pub n_points: usize,
}

/// Fits a single constant relating `lhs` to `rhs` across all pairs.
///
/// Ratio mode returns the geometric mean of `lhs/rhs` (all ratios must share
/// a sign) and the rms of the log residuals. Offset mode returns the mean of
/// `lhs − rhs` and the rms residual.
pub fn fit_discrepancy(pairs: &[(f64, f64)], mode: FitMode) -> Result<DiscrepancyFit> {
    if pairs.len() < 3 {
        return Err(Error::Degenerate(format!("need at least 3 pairs, got {}", pairs.len())));
    }
    if pairs.iter().any(|(l, r)| !l.is_finite() || !r.is_finite()) {
        return Err(Error::Degenerate("non-finite pair".into()));
    }
    let n = pairs.len() as f64;
    match mode {
        FitMode::Ratio => {
            if pairs.iter().any(|&(_, r)| r == 0.0) {
                return Err(Error::Degenerate("rhs = 0 in ratio mode".into()));
            }
            let ratios: Vec<f64> = pairs.iter().map(|&(l, r)| l / r).collect();
            let sign = if ratios.iter().all(|&q| q > 0.0) {
                1.0
            } else if ratios.iter().all(|&q| q < 0.0) {
                -1.0
            } else {
                return Err(Error::Degenerate("ratios change sign".into()));
            };
            let logs: Vec<f64> = ratios.iter().map(|q| q.abs().ln()).collect();
            let mean = logs.iter().sum::<f64>() / n;
            let rms = (logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / n).sqrt();
            Ok(DiscrepancyFit {
                mode,
                constant: sign * mean.exp(),
                residual_rms: rms,
                n_points: pairs.len(),
            })
        }
        FitMode::Offset => {
            let diffs: Vec<f64> = pairs.iter().map(|&(l, r)| l - r).collect();
            let mean = diffs.iter().sum::<f64>() / n;
            let rms = (diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n).sqrt();
            Ok(DiscrepancyFit {
                mode,
                constant: mean,
                residual_rms: rms,
                n_points: pairs.len(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_factor_two() {
        let pairs: Vec<_> = [1.0, -2.5, 3.0, 7.0].iter().map(|&r| (2.0 * r, r)).collect();
        let fit = fit_discrepancy(&pairs, FitMode::Ratio).unwrap();
        assert!((fit.constant - 2.0).abs() < 1e-15);
        assert!(fit.residual_rms < 1e-15);
        assert_eq!(fit.n_points, 4);
    }

    #[test]
    fn identical_pairs() {
        let pairs = [(1.0, 1.0), (2.0, 2.0), (-3.0, -3.0)];
        assert_eq!(fit_discrepancy(&pairs, FitMode::Ratio).unwrap().constant, 1.0);
        let off = fit_discrepancy(&pairs, FitMode::Offset).unwrap();
        assert_eq!(off.constant, 0.0);
        assert_eq!(off.residual_rms, 0.0);
    }

    #[test]
    fn negative_constant() {
        let pairs = [(-1.0, 1.0), (2.0, -2.0), (-3.0, 3.0)];
        let fit = fit_discrepancy(&pairs, FitMode::Ratio).unwrap();
        assert!((fit.constant + 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_discrepancy(&[(1.0, 1.0), (2.0, 2.0)], FitMode::Offset).is_err());
        assert!(fit_discrepancy(&[(1.0, 0.0), (2.0, 2.0), (1.0, 1.0)], FitMode::Ratio).is_err());
        assert!(fit_discrepancy(&[(1.0, 1.0), (-2.0, 2.0), (1.0, 1.0)], FitMode::Ratio).is_err());
    }
}
