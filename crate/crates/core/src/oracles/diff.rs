//! Central finite differences.

use crate::error::{Error, Result};

fn dyadic_step(h: f64) -> f64 {
    2f64.powi(h.log2().round() as i32)
}

/// Central difference approximation of `f'(x)` (`order = 1`) or `f''(x)`
/// (`order = 2`).
///
/// Steps are `ε^(1/3)·max(1,|x|)` and `ε^(1/4)·max(1,|x|)` rounded to a power
/// of two, so `x ± h` is formed without representation error.
pub fn finite_diff<F: Fn(f64) -> f64>(f: F, x: f64, order: u32) -> Result<f64> {
    let scale = x.abs().max(1.0);
    match order {
        1 => {
            let h = dyadic_step(f64::EPSILON.cbrt() * scale);
            Ok((f(x + h) - f(x - h)) / (2.0 * h))
        }
        2 => {
            let h = dyadic_step(f64::EPSILON.powf(0.25) * scale);
            Ok((f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h))
        }
        _ => Err(Error::Parameter(format!(
            "finite_diff: order must be 1 or 2, got {order}"
        ))),
    }
}
