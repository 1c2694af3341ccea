//! k-deformed gamma, digamma and polygamma functions.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracles::quadrature::{adaptive_quad, QuadratureResult};
use crate::oracles::series::{euler_maclaurin_tail, TERM_CAP};
use crate::scalar::{self, SeriesValue, CONSTANTS};

/// The deformation parameter `k > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct KScale(f64);

impl KScale {
    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && k > 0.0 {
            Ok(KScale(k))
        } else {
            Err(Error::domain("KScale", k, "finite k > 0"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for KScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for KScale {
    type Error = Error;

    fn try_from(k: f64) -> Result<Self> {
        KScale::new(k)
    }
}

/// Relative radius (in units of `k`) around the poles of `Γ_k` where
/// evaluation is refused.
pub const POLE_GUARD: f64 = 1e-8;

fn near_pole(t: f64) -> bool {
    t <= POLE_GUARD && (t - t.round()).abs() < POLE_GUARD
}

/// `ln Γ_k(x)` for `x > 0`.
pub fn ln_gamma_k(k: KScale, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("ln_gamma_k", x, "x > 0, finite"));
    }
    let k = k.get();
    let t = x / k;
    Ok((t - 1.0) * k.ln() + scalar::ln_gamma(t)?)
}

/// `Γ_k(x)` off the poles `x ∈ {0, −k, −2k, …}`.
pub fn gamma_k(k: KScale, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("gamma_k", x, "finite x"));
    }
    let kf = k.get();
    let t = x / kf;
    if near_pole(t) {
        return Err(Error::Pole {
            func: "gamma_k",
            value: x,
        });
    }
    let g = if t > 0.0 {
        ln_gamma_k(k, x)?.exp()
    } else {
        kf.powf(t - 1.0) / scalar::rgamma(t)
    };
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::Range {
            func: "gamma_k",
            value: x,
        })
    }
}

/// `1/Γ_k(x)`, zero at the poles of `Γ_k`.
pub fn rgamma_k(k: KScale, x: f64) -> f64 {
    let kf = k.get();
    let t = x / kf;
    if t > 0.5 {
        return (-ln_gamma_k(k, x).expect("x > 0")).exp();
    }
    kf.powf(1.0 - t) * scalar::rgamma(t)
}

/// `ψ_k(x)` for `x > 0`.
pub fn psi_k(k: KScale, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("psi_k", x, "x > 0, finite"));
    }
    let k = k.get();
    Ok((k.ln() + scalar::digamma(x / k)?) / k)
}

/// `ψ_k^(m)(x)` for `m ≥ 1`, `x > 0`.
pub fn psi_k_m(k: KScale, m: u32, x: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::Parameter("psi_k_m: order m must be ≥ 1".into()));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("psi_k_m", x, "x > 0, finite"));
    }
    let k = k.get();
    Ok(scalar::polygamma(m, x / k)? / k.powi(m as i32 + 1))
}

/// `Σ_{n ≥ n0} f(n)` by summing `f(n0..N)` directly and closing with an
/// Euler-Maclaurin tail; `N` doubles until the tail bound meets `tol`.
fn em_sum<F, T>(func: &'static str, f: F, tail: T, n0: usize, n_start: usize, tol: f64) -> Result<SeriesValue>
where
    F: Fn(usize) -> f64,
    T: Fn(f64) -> (f64, [f64; 8]),
{
    let mut n_cut = n_start.max(n0 + 1);
    let mut head = 0.0;
    let mut summed_to = n0;
    loop {
        for n in summed_to..n_cut {
            head += f(n);
        }
        summed_to = n_cut;
        let (integral, derivs) = tail(n_cut as f64);
        let (tail_sum, bound) = euler_maclaurin_tail(integral, &derivs);
        let value = head + tail_sum;
        let rounding = 4.0 * f64::EPSILON * (n_cut as f64).sqrt() * value.abs().max(head.abs());
        let err = bound + rounding;
        if err <= tol {
            return Ok(SeriesValue {
                value,
                error_estimate: err,
                terms_used: n_cut - n0,
                converged: true,
            });
        }
        if n_cut >= TERM_CAP / 2 {
            return Err(Error::Convergence {
                func,
                terms: n_cut - n0,
                estimate: value,
                error: err,
            });
        }
        n_cut *= 2;
    }
}

/// `ψ_k(x)` by the defining series `(ln k − γ)/k − 1/x + Σ x/(nk(nk+x))`.
///
/// Kept independent of [`psi_k`] so the two can cross-check each other.
pub fn psi_k_series(k: KScale, x: f64, tol: f64) -> Result<SeriesValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("psi_k_series", x, "x > 0, finite"));
    }
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("psi_k_series: tol must be > 0, got {tol}")));
    }
    let k = k.get();
    let term = |n: usize| {
        let nk = n as f64 * k;
        x / (nk * (nk + x))
    };
    let tail = |n: f64| {
        let nk = n * k;
        let integral = (x / nk).ln_1p() / k;
        let mut d = [0.0; 8];
        let mut fact = 1.0;
        let mut kp = 1.0;
        for (j, slot) in d.iter_mut().enumerate() {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let e = -(j as i32 + 1);
            *slot = sign * fact * kp * (nk.powi(e) - (nk + x).powi(e));
            fact *= (j + 1) as f64;
            kp *= k;
        }
        (integral, d)
    };
    let start = 16usize.max((4.0 * x / k).ceil() as usize);
    let sum = em_sum("psi_k_series", term, tail, 1, start, tol)?;
    Ok(SeriesValue {
        value: (k.ln() - CONSTANTS.euler_gamma) / k - 1.0 / x + sum.value,
        ..sum
    })
}

/// `ψ_k^(m)(x)` by `(−1)^{m+1} m! Σ 1/(nk+x)^{m+1}`.
pub fn psi_k_m_series(k: KScale, m: u32, x: f64, tol: f64) -> Result<SeriesValue> {
    if m == 0 {
        return Err(Error::Parameter("psi_k_m_series: order m must be ≥ 1".into()));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("psi_k_m_series", x, "x > 0, finite"));
    }
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("psi_k_m_series: tol must be > 0, got {tol}")));
    }
    let k = k.get();
    let mf = f64::from(m);
    let scale = scalar::factorial(m);
    let p = -(m as i32 + 1);
    let term = |n: usize| (n as f64 * k + x).powi(p);
    let tail = |n: f64| {
        let base = n * k + x;
        let integral = base.powi(-(m as i32)) / (mf * k);
        let mut d = [0.0; 8];
        let mut coeff = 1.0;
        for (j, slot) in d.iter_mut().enumerate() {
            *slot = coeff * base.powi(p - j as i32);
            coeff *= -(mf + 1.0 + j as f64) * k;
        }
        (integral, d)
    };
    let start = 16usize.max((4.0 * x / k).ceil() as usize);
    let sum = em_sum("psi_k_m_series", term, tail, 0, start, tol / scale)?;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    Ok(SeriesValue {
        value: sign * scale * sum.value,
        error_estimate: scale * sum.error_estimate,
        ..sum
    })
}

/// `Γ_k(x) = ∫₀^∞ t^{x−1} e^{−t^k/k} dt` by quadrature, `x > 0`.
///
/// On `[0, 1]` the substitution `s = t^x` removes the endpoint singularity.
/// The upper limit is placed where the integrand has fallen `e^{−45}` below
/// its peak. `tol` is relative to `max(1, peak)`.
pub fn gamma_k_integral(k: KScale, x: f64, tol: f64) -> Result<QuadratureResult> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("gamma_k_integral", x, "x > 0, finite"));
    }
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!(
            "gamma_k_integral: tol must be > 0, got {tol}"
        )));
    }
    let kf = k.get();
    let exponent = |t: f64| (x - 1.0) * t.ln() - t.powf(kf) / kf;
    let (t_peak, peak) = if x > 1.0 {
        let t = (x - 1.0).powf(1.0 / kf).max(1.0);
        (t, exponent(t))
    } else {
        (1.0, exponent(1.0))
    };
    let scale = peak.exp().max(1.0);
    let mut upper = 2.0 * t_peak;
    while exponent(upper) > peak - 45.0 {
        upper *= 1.5;
    }
    let head = adaptive_quad(|s| (-s.powf(kf / x) / kf).exp(), 0.0, 1.0, 0.5 * tol * x)?;
    let body = adaptive_quad(|t| exponent(t).exp(), 1.0, upper, 0.5 * tol * scale)?;
    Ok(QuadratureResult {
        value: head.value / x + body.value,
        error_estimate: head.error_estimate / x + body.error_estimate,
        subdivisions: head.subdivisions + body.subdivisions,
    })
}

/// Right side of the k-duplication formula,
/// `2ψ_k(2kx) − ψ_k(kx) − 2 ln 2 / k`, which equals `ψ_k(kx + k/2)`.
pub fn psi_k_duplication_rhs(k: KScale, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("psi_k_duplication_rhs", x, "x > 0, finite"));
    }
    let kx = k.get() * x;
    Ok(2.0 * psi_k(k, 2.0 * kx)? - psi_k(k, kx)? - 2.0 * CONSTANTS.ln2 / k.get())
}
