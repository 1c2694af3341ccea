//! Hadamard k-gamma function `H_k`.

use serde::Serialize;

use crate::beta::beta_k;
use crate::error::{Error, Result};
use crate::kfun::{gamma_k, rgamma_k, KScale};
use crate::registry::{IdentityReport, Params, Verdict};
use crate::scalar::{self, sin_pi};

/// Bracketed root of a scalar equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootResult {
    pub root: f64,
    pub residual: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub iterations: usize,
}

/// `H_k(x) = β_k(k − x)/Γ_k(k − x)` on `x < k`.
fn hadamard_base(k: KScale, x: f64) -> f64 {
    let y = k.get() - x;
    beta_k(k, y).expect("k - x > 0") * rgamma_k(k, y)
}

/// `H_k(x)` for every finite `x`.
///
/// Below `k` the β-difference form is used directly. From `k` on, the value
/// is carried up from the base point `x − ⌊x/k⌋k ∈ [0, k)` by
/// `H_k(t + k) = t H_k(t) + 1/Γ_k(k − t)`.
pub fn hadamard_k(k: KScale, x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let kf = k.get();
    if x < kf {
        return hadamard_base(k, x);
    }
    let steps = (x / kf).floor();
    let mut t = x - steps * kf;
    if t < 0.0 {
        t = 0.0;
    }
    let mut h = hadamard_base(k, t);
    for _ in 0..steps as u64 {
        h = t * h + rgamma_k(k, kf - t);
        t += kf;
    }
    h
}

/// `H_k(x) = Γ_k(x)[1 − k sin(πx/k) β_k(x)/π]` for `x > 0`.
///
/// Independent of the recurrence used by [`hadamard_k`].
pub fn hadamard_k_reflection(k: KScale, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain("hadamard_k_reflection", x, "x > 0"));
    }
    let kf = k.get();
    let s = sin_pi(x / kf);
    let g = gamma_k(k, x)?;
    Ok(g * (1.0 - kf * s * beta_k(k, x)? / std::f64::consts::PI))
}

/// Both sides of `H_k(x + k) = x H_k(x) + 1/Γ_k(k − x)`.
///
/// The left side never applies the recurrence at `x`: it uses the
/// β-difference form when `x + k < k` and the Γ_k/β_k form otherwise.
pub fn functional_eq_41(k: KScale, x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::domain("functional_eq_41", x, "finite x"));
    }
    let kf = k.get();
    let lhs = if x < 0.0 {
        hadamard_base(k, x + kf)
    } else {
        hadamard_k_reflection(k, x + kf)?
    };
    let rhs = x * hadamard_k(k, x) + rgamma_k(k, kf - x);
    Ok((lhs, rhs))
}

/// `H_k(x + nk)` by `n` forward steps of the functional equation from
/// `H_k(x)`; `1 ≤ n ≤ 50`.
pub fn recursion_47(k: KScale, x: f64, n: u32) -> Result<f64> {
    if !(1..=50).contains(&n) {
        return Err(Error::Parameter(format!("recursion_47: n must be in 1..=50, got {n}")));
    }
    let kf = k.get();
    let mut h = hadamard_k(k, x);
    let mut t = x;
    for _ in 0..n {
        h = t * h + rgamma_k(k, kf - t);
        t += kf;
    }
    if h.is_finite() {
        Ok(h)
    } else {
        Err(Error::Range {
            func: "recursion_47",
            value: x,
        })
    }
}

/// Which closed form of the n-step recurrence to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormVariant {
    /// Product `[x+(n−1)k]⋯[x+2k](x+1)x` and a last reciprocal-gamma term
    /// carrying that full product.
    AsPrinted,
    /// `Π_{i<n}(x+ik) H_k(x) + Σ_j Π_{j<i<n}(x+ik) / Γ_k(k − x − jk)`.
    Corrected,
}

/// Closed-form expansion of `H_k(x + nk)` in terms of `H_k(x)`.
pub fn recursion_47_closed(k: KScale, x: f64, n: u32, variant: ClosedFormVariant) -> Result<f64> {
    if !(1..=50).contains(&n) {
        return Err(Error::Parameter(format!(
            "recursion_47_closed: n must be in 1..=50, got {n}"
        )));
    }
    let kf = k.get();
    let factor = |i: u32| -> f64 {
        match (variant, i) {
            (ClosedFormVariant::AsPrinted, 1) => x + 1.0,
            _ => x + f64::from(i) * kf,
        }
    };
    let full: f64 = (0..n).map(factor).product();
    let mut sum = full * hadamard_k(k, x);
    for j in 0..n {
        let partial: f64 = if j == 0 && variant == ClosedFormVariant::AsPrinted {
            full
        } else {
            (j + 1..n).map(factor).product()
        };
        sum += partial * rgamma_k(k, kf - x - f64::from(j) * kf);
    }
    Ok(sum)
}

/// `(H_k(x), Γ_k(x)/k − Γ_k(x) sin(πx/k) β_k(x)/π)` for `x > 0` off the
/// poles.
pub fn representation_48(k: KScale, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(Error::domain("representation_48", x, "x > 0"));
    }
    let kf = k.get();
    let g = gamma_k(k, x)?;
    let rhs = g / kf - g * sin_pi(x / kf) * beta_k(k, x)? / std::f64::consts::PI;
    Ok((hadamard_k(k, x), rhs))
}

/// `g(t) = H_k(2t) − 2 k^{t/k} H_k(t)`.
pub fn alpha0_gap(k: KScale, t: f64) -> f64 {
    let kf = k.get();
    hadamard_k(k, 2.0 * t) - 2.0 * kf.powf(t / kf) * hadamard_k(k, t)
}

/// Root of [`alpha0_gap`] in `[1.5k, ∞)`.
///
/// Bisection on `[1.5k, 5k]` (upper end doubled up to `100k` until a sign
/// change appears), then secant polishing. A scan at resolution `0.01k`
/// rejects brackets holding more than one sign change.
pub fn alpha0_solve(k: KScale, tol: f64) -> Result<RootResult> {
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("alpha0_solve: tol must be > 0, got {tol}")));
    }
    let kf = k.get();
    let g = |t: f64| alpha0_gap(k, t);
    let lo0 = 1.5 * kf;
    let mut hi = 5.0 * kf;
    let g_lo0 = g(lo0);
    while g_lo0.signum() == g(hi).signum() {
        hi *= 2.0;
        if hi > 100.0 * kf {
            return Err(Error::Bracket {
                lo: lo0,
                hi: 100.0 * kf,
            });
        }
    }

    let steps = ((hi - lo0) / (0.01 * kf)).ceil() as usize;
    let mut changes = 0;
    let mut prev = g_lo0;
    for i in 1..=steps {
        let cur = g(lo0 + (hi - lo0) * i as f64 / steps as f64);
        if cur.signum() != prev.signum() {
            changes += 1;
        }
        prev = cur;
    }
    if changes != 1 {
        return Err(Error::Degenerate(format!(
            "alpha0_solve: {changes} sign changes of H_k(2t) - 2k^(t/k)H_k(t) on [{lo0}, {hi}]"
        )));
    }

    let (mut a, mut b) = (lo0, hi);
    let mut ga = g_lo0;
    let mut iterations = 0;
    while b - a > 1e-6 * kf {
        let mid = 0.5 * (a + b);
        let gm = g(mid);
        iterations += 1;
        if gm.signum() == ga.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    let (bracket_lo, bracket_hi) = (a, b);
    let (mut x0, mut x1) = (a, b);
    let (mut g0, mut g1) = (g(x0), g(x1));
    for _ in 0..60 {
        if g1 == g0 {
            break;
        }
        let x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
        if !(bracket_lo..=bracket_hi).contains(&x2) {
            break;
        }
        iterations += 1;
        x0 = x1;
        g0 = g1;
        x1 = x2;
        g1 = g(x1);
        if g1.abs() < tol * 1e-3 || (x1 - x0).abs() < 4.0 * f64::EPSILON * x1 {
            break;
        }
    }
    let root = if g1.abs() <= g0.abs() { x1 } else { x0 };
    let residual = g(root);
    if residual.abs() >= tol {
        return Err(Error::Convergence {
            func: "alpha0_solve",
            terms: iterations,
            estimate: root,
            error: residual.abs(),
        });
    }
    Ok(RootResult {
        root,
        residual,
        bracket_lo,
        bracket_hi,
        iterations,
    })
}

/// `(k^{y/k} H_k(x) + k^{x/k} H_k(y), H_k(x + y))`.
pub fn superadditivity_sides(k: KScale, x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::Parameter(format!(
            "superadditivity: need x, y > 0, got ({x}, {y})"
        )));
    }
    let kf = k.get();
    let lhs = kf.powf(y / kf) * hadamard_k(k, x) + kf.powf(x / kf) * hadamard_k(k, y);
    Ok((lhs, hadamard_k(k, x + y)))
}

/// Superadditivity at `(x, y)` as a registry report: PASS iff
/// `lhs ≤ rhs + 1e-12`.
pub fn superadditivity_check_43(k: KScale, x: f64, y: f64) -> Result<IdentityReport> {
    let (lhs, rhs) = superadditivity_sides(k, x, y)?;
    let verdict = if lhs <= rhs + 1e-12 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let params = Params::from([("k".to_string(), k.get()), ("x".to_string(), x), ("y".to_string(), y)]);
    Ok(IdentityReport::new("THM4.3", params, lhs, rhs, verdict, String::new()))
}

/// Which form of the Lerch identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LerchVariant {
    /// `2xΦ(−1,1,−x)` against `Φ(1,1,1−x/2) − Φ(1,1,½−x/2)`.
    AsPrinted,
    /// `2Φ(−1,1,1−x)` against `Φ(1,1,½−x/2) − Φ(1,1,1−x/2)`.
    Corrected,
}

/// Both sides of the Lerch identity for `|x| < 1`.
pub fn lerch_identity_410(x: f64, variant: LerchVariant) -> Result<(f64, f64)> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain("lerch_identity_410", x, "|x| < 1"));
    }
    let a = 1.0 - 0.5 * x;
    let b = 0.5 - 0.5 * x;
    match variant {
        LerchVariant::AsPrinted => {
            let lhs = 2.0 * x * scalar::lerch_alt(-x)?.value;
            Ok((lhs, scalar::lerch_one_diff(a, b)?))
        }
        LerchVariant::Corrected => {
            let lhs = 2.0 * scalar::lerch_alt(1.0 - x)?.value;
            Ok((lhs, scalar::lerch_one_diff(b, a)?))
        }
    }
}
