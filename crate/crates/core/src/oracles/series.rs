//! Summation of alternating series and Euler-Maclaurin tails.

use crate::error::{Error, Result};
use crate::scalar::SeriesValue;

/// Default cap on the number of series terms.
pub const TERM_CAP: usize = 1_000_000;

/// Bernoulli numbers B_2, B_4, ..., B_20.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Sums `Σ term(n)` for an alternating series whose magnitudes decrease
/// monotonically to zero.
///
/// Terms are accumulated in consecutive pairs so the partial sums move
/// monotonically; the truncation bound is the magnitude of the first omitted
/// term.
pub fn alt_series_sum<F: Fn(usize) -> f64>(term: F, tol: f64, cap: usize) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("alt_series_sum: tol must be > 0, got {tol}")));
    }
    let mut sum = 0.0;
    let mut n = 0;
    loop {
        let bound = term(n).abs();
        if bound <= tol {
            return Ok(SeriesValue {
                value: sum,
                error_estimate: bound,
                terms_used: n,
                converged: true,
            });
        }
        if n + 2 > cap {
            return Err(Error::Convergence {
                func: "alt_series_sum",
                terms: n,
                estimate: sum,
                error: bound,
            });
        }
        sum += term(n) + term(n + 1);
        n += 2;
    }
}

/// Accelerated sum of `Σ (-1)^n a(n)` (Cohen, Rodriguez Villegas, Zagier).
///
/// `magnitude(n)` must be a Hausdorff moment sequence `∫₀¹ tⁿ dμ(t)` with
/// positive `μ`, e.g. `1/(x + n k)` or `1/(n + a)^s`. For such sequences the
/// error after `n` terms is at most `2 a(0) / (3 + √8)^n`.
pub fn alt_series_cvz<F: Fn(usize) -> f64>(magnitude: F, tol: f64, cap: usize) -> Result<SeriesValue> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("alt_series_cvz: tol must be > 0, got {tol}")));
    }
    let a0 = magnitude(0);
    if a0 == 0.0 {
        return Ok(SeriesValue {
            value: 0.0,
            error_estimate: 0.0,
            terms_used: 1,
            converged: true,
        });
    }
    let rate = 3.0 + 8f64.sqrt();
    let needed = ((2.0 * a0.abs() / tol).ln() / rate.ln()).ceil().max(1.0) as usize;
    if needed > cap {
        return Err(Error::Convergence {
            func: "alt_series_cvz",
            terms: cap,
            estimate: f64::NAN,
            error: 2.0 * a0.abs() / rate.powf(cap as f64),
        });
    }
    let n = needed;
    let mut d = rate.powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n {
        c = b - c;
        s += c * magnitude(k);
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    Ok(SeriesValue {
        value: s / d,
        error_estimate: 2.0 * a0.abs() / rate.powi(n as i32),
        terms_used: n,
        converged: true,
    })
}

/// Euler-Maclaurin tail `Σ_{n ≥ N} f(n)` from the integral `∫_N^∞ f` and the
/// derivatives `derivs[j] = f^{(j)}(N)`, `j = 0..=2p+1`.
///
/// Returns `(tail, bound)`. When the even derivatives of `f` keep a constant
/// sign on `[N, ∞)` (true for completely monotone `f`) the remainder is
/// bounded by the first omitted correction, which is what `bound` reports.
pub fn euler_maclaurin_tail(integral: f64, derivs: &[f64]) -> (f64, f64) {
    assert!(
        derivs.len() >= 2 && derivs.len().is_multiple_of(2) && derivs.len() / 2 <= BERNOULLI_EVEN.len(),
        "derivative list must hold f, f', ..., f^(2p+1)"
    );
    let p = derivs.len() / 2 - 1;
    let mut tail = integral + 0.5 * derivs[0];
    let mut fact = 1.0;
    for j in 1..=p {
        fact *= (2 * j - 1) as f64 * (2 * j) as f64;
        tail -= BERNOULLI_EVEN[j - 1] / fact * derivs[2 * j - 1];
    }
    fact *= (2 * p + 1) as f64 * (2 * p + 2) as f64;
    let bound = (BERNOULLI_EVEN[p] / fact * derivs[2 * p + 1]).abs();
    (tail, bound)
}
