//! Sampled complete-monotonicity probe.

use serde::Serialize;

use crate::error::{Error, Result};

/// First point where a sign condition `(-1)^j Δ_h^j f(x) ≥ 0` fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CmViolation {
    pub order: u32,
    pub x: f64,
    /// Value of `(-1)^j Δ_h^j f(x)`.
    pub signed_difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmVerdict {
    pub checks: usize,
    pub violation: Option<CmViolation>,
}

impl CmVerdict {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Forward difference `Δ_h^j f(x)` from precomputed samples `f(x + i h)`.
pub fn forward_difference(samples: &[f64], order: usize) -> f64 {
    let mut coeff = 1.0;
    let mut acc = 0.0;
    for i in 0..=order {
        let sign = if (order - i).is_multiple_of(2) { 1.0 } else { -1.0 };
        acc += sign * coeff * samples[i];
        coeff = coeff * (order - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Checks `(-1)^j Δ_h^j f(x) ≥ -1e-9·|f(x)|` for every `j ≤ max_order` and
/// every grid point `x = x_lo + i h` with `x + j h ≤ x_hi`.
///
/// Returns the first violation in (x, order) scan order, or a passing
/// verdict.
pub fn cm_probe<F: Fn(f64) -> f64>(f: F, x_lo: f64, x_hi: f64, h: f64, max_order: u32) -> Result<CmVerdict> {
    if !(h > 0.0) || !(x_lo + max_order as f64 * h <= x_hi * (1.0 + 1e-12)) {
        return Err(Error::Parameter(format!(
            "cm_probe: need h > 0 and x_lo + max_order·h ≤ x_hi (x_lo={x_lo}, x_hi={x_hi}, h={h}, max_order={max_order})"
        )));
    }
    let n = ((x_hi - x_lo) / h + 1e-9).floor() as usize;
    let samples: Vec<f64> = (0..=n).map(|i| f(x_lo + i as f64 * h)).collect();
    let mut checks = 0;
    for i in 0..=n {
        let fx = samples[i];
        for j in 0..=max_order as usize {
            if i + j > n {
                break;
            }
            let d = forward_difference(&samples[i..=i + j], j);
            let signed = if j % 2 == 0 { d } else { -d };
            checks += 1;
            if !(signed >= -1e-9 * fx.abs()) {
                return Ok(CmVerdict {
                    checks,
                    violation: Some(CmViolation {
                        order: j as u32,
                        x: x_lo + i as f64 * h,
                        signed_difference: signed,
                    }),
                });
            }
        }
    }
    Ok(CmVerdict {
        checks,
        violation: None,
    })
}
