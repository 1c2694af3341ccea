//! Moment integrals `I(k, m) = ∫₀ᵏ xᵐ ψ_k(x) dx`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kfun::{ln_gamma_k, psi_k, psi_k_m, KScale};
use crate::oracles::quadrature::{adaptive_quad, QuadratureResult};
use crate::oracles::series::euler_maclaurin_tail;
use crate::scalar::{self, SeriesValue, CONSTANTS};

/// Evaluation routes for `I(k, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FurduiMethod {
    Oracle,
    Thm31,
    Thm32Printed,
    Thm32Variant,
    Thm33Printed,
    Thm33Variant,
    Thm34,
    Eq310,
}

impl FurduiMethod {
    pub const ALL: [FurduiMethod; 8] = [
        FurduiMethod::Oracle,
        FurduiMethod::Thm31,
        FurduiMethod::Thm32Printed,
        FurduiMethod::Thm32Variant,
        FurduiMethod::Thm33Printed,
        FurduiMethod::Thm33Variant,
        FurduiMethod::Thm34,
        FurduiMethod::Eq310,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FurduiMethod::Oracle => "oracle",
            FurduiMethod::Thm31 => "thm31",
            FurduiMethod::Thm32Printed => "thm32_printed",
            FurduiMethod::Thm32Variant => "thm32_variant",
            FurduiMethod::Thm33Printed => "thm33_printed",
            FurduiMethod::Thm33Variant => "thm33_variant",
            FurduiMethod::Thm34 => "thm34",
            FurduiMethod::Eq310 => "eq310",
        }
    }
}

impl fmt::Display for FurduiMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FurduiMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FurduiMethod::ALL
            .into_iter()
            .find(|m| m.id() == s.trim())
            .ok_or_else(|| Error::Parameter(format!("unknown furdui method '{s}'")))
    }
}

/// One evaluation of `I(k, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FurduiMethodResult {
    pub method_id: FurduiMethod,
    pub value: f64,
    pub error_estimate: f64,
    pub terms_or_subdivisions: usize,
}

fn check_args(func: &str, m: u32, tol: f64) -> Result<()> {
    if m < 1 {
        return Err(Error::Parameter(format!("{func}: m must be >= 1, got {m}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Parameter(format!("{func}: tol must be > 0, got {tol}")));
    }
    Ok(())
}

/// Nielsen beta `β(t) = Σ (−1)ⁿ/(t + n)` for `t > 0`.
fn nielsen_beta(t: f64) -> Result<f64> {
    Ok(0.5 * (scalar::digamma(0.5 * (t + 1.0))? - scalar::digamma(0.5 * t)?))
}

/// `Σ_{s ≥ s0} weight(s)·(ζ(s) − 1)` where `|weight|` is non-increasing and
/// consecutive terms shrink by at least `ratio`.
fn zeta_minus_one_sum(s0: u32, step: u32, ratio: f64, tol: f64, weight: impl Fn(u32) -> f64) -> SeriesValue {
    let mut sum = 0.0;
    let mut s = s0;
    let mut terms = 0;
    loop {
        let term = weight(s) * scalar::zeta_int_minus_one(s);
        let bound = term.abs() / (1.0 - ratio);
        if bound <= tol || term == 0.0 {
            return SeriesValue {
                value: sum,
                error_estimate: bound,
                terms_used: terms,
                converged: true,
            };
        }
        sum += term;
        terms += 1;
        s += step;
    }
}

/// `I(k, m)` by quadrature of the regularized integrand
/// `xᵐ[ψ_k(x) + 1/x] = xᵐ ψ_k(x + k)`, minus `kᵐ/m`.
pub fn furdui_oracle(k: KScale, m: u32, tol: f64) -> Result<QuadratureResult> {
    check_args("furdui_oracle", m, tol)?;
    let kf = k.get();
    let mi = m as i32;
    let q = adaptive_quad(|x| x.powi(mi) * psi_k(k, x + kf).unwrap_or(f64::NAN), 0.0, kf, tol)?;
    Ok(QuadratureResult {
        value: q.value - kf.powi(mi) / f64::from(m),
        ..q
    })
}

/// `I(k, m)` by quadrature of `xᵐ ψ_k(x)` itself. Cross-check only.
pub fn furdui_raw_quadrature(k: KScale, m: u32, tol: f64) -> Result<QuadratureResult> {
    check_args("furdui_raw_quadrature", m, tol)?;
    let kf = k.get();
    let mi = m as i32;
    adaptive_quad(
        |x| {
            let psi = psi_k(k, x).or_else(|_| psi_k(k, x + kf).map(|p| p - 1.0 / x));
            x.powi(mi) * psi.unwrap_or(f64::NAN)
        },
        0.0,
        kf,
        tol,
    )
}

/// `kᵐ(ln k − γ)/(m+1) − kᵐ/m + kᵐ Σ_{s≥2} (−1)ˢ ζ(s)/(m+s)`.
///
/// The `ζ(s) = 1` part of the sum is `β(m+2)`; the remainder converges
/// geometrically.
pub fn thm31_series(k: KScale, m: u32, tol: f64) -> Result<SeriesValue> {
    check_args("thm31_series", m, tol)?;
    let kf = k.get();
    let mf = f64::from(m);
    let km = kf.powi(m as i32);
    let tail = zeta_minus_one_sum(2, 1, 0.5, tol / km, |s| {
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        sign / (mf + f64::from(s))
    });
    let value =
        km * (kf.ln() - CONSTANTS.euler_gamma) / (mf + 1.0) - km / mf + km * (nielsen_beta(mf + 2.0)? + tail.value);
    Ok(SeriesValue {
        value,
        error_estimate: km * tail.error_estimate,
        ..tail
    })
}

/// Sign of the `mγ` term in the second series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm32Variant {
    /// `(ln k − mγ)`.
    AsPrinted,
    /// `(ln k + mγ)`.
    SignVariant,
}

/// `kᵐ(ln k ∓ mγ)/(m+1) − kᵐ/m + m kᵐ Σ_{s≥2} (−1)^{s+1} ζ(s)/(s(m+s))`.
pub fn thm32_series(k: KScale, m: u32, tol: f64, variant: Thm32Variant) -> Result<SeriesValue> {
    check_args("thm32_series", m, tol)?;
    let kf = k.get();
    let mf = f64::from(m);
    let km = kf.powi(m as i32);
    let tail = zeta_minus_one_sum(2, 1, 0.5, tol / (mf * km), |s| {
        let sign = if s % 2 == 0 { -1.0 } else { 1.0 };
        let sf = f64::from(s);
        sign / (sf * (mf + sf))
    });
    // 1/(s(m+s)) = (1/s − 1/(m+s))/m summed against (−1)^{s+1} over s ≥ 2
    let ones = (CONSTANTS.ln2 - 1.0 + nielsen_beta(mf + 2.0)?) / mf;
    let gamma = match variant {
        Thm32Variant::AsPrinted => -mf * CONSTANTS.euler_gamma,
        Thm32Variant::SignVariant => mf * CONSTANTS.euler_gamma,
    };
    let value = km * (kf.ln() + gamma) / (mf + 1.0) - km / mf + mf * km * (ones + tail.value);
    Ok(SeriesValue {
        value,
        error_estimate: mf * km * tail.error_estimate,
        ..tail
    })
}

/// Which log-gamma expansion feeds the third series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm33Variant {
    /// Coefficients `3/2` on `ln x` and `+½` on `kᵐ ln(π/k)`.
    AsPrinted,
    /// Coefficients `½` on `ln x` and `−½` on `kᵐ ln(π/k)`.
    Corrected,
    /// `−m ∫₀ᵏ x^{m−1} ln Γ_k(x) dx` by quadrature, with no expansion.
    LnGammaAudit,
}

/// `I(k, m)` through the log-sine expansion of `ln Γ_k`.
pub fn thm33_series(k: KScale, m: u32, tol: f64, variant: Thm33Variant) -> Result<SeriesValue> {
    check_args("thm33_series", m, tol)?;
    let kf = k.get();
    let mf = f64::from(m);
    let km = kf.powi(m as i32);
    let log_moment = km * kf.ln() / mf - km / (mf * mf);

    if variant == Thm33Variant::LnGammaAudit {
        // ln Γ_k(x) = ln Γ_k(x + k) − ln x; the first part is smooth on [0, k]
        let q = adaptive_quad(
            |x| x.powi(m as i32 - 1) * ln_gamma_k(k, x + kf).unwrap_or(f64::NAN),
            0.0,
            kf,
            tol / mf,
        )?;
        return Ok(SeriesValue {
            value: -mf * (q.value - log_moment),
            error_estimate: mf * q.error_estimate,
            terms_used: q.subdivisions,
            converged: true,
        });
    }

    let (c_x, c_pi) = match variant {
        Thm33Variant::AsPrinted => (1.5, 0.5),
        _ => (0.5, -0.5),
    };
    let pi = CONSTANTS.pi;
    let logsin = logsin_moment(m, tol / (mf * km).max(1.0))?;
    // Σ_{n≥1} ζ(2n+1)/((2n+1)(2n+m+1)) with ζ = 1 summed by digamma
    let ones = (scalar::digamma(0.5 * (mf + 3.0))? - scalar::digamma(1.5)?) / (2.0 * mf);
    let tail = zeta_minus_one_sum(3, 2, 0.25, tol / (mf * km), |s| {
        let sf = f64::from(s);
        1.0 / (sf * (sf + mf))
    });
    let value = -mf * km * (kf.ln() - CONSTANTS.euler_gamma) / (mf + 1.0)
        + mf * c_x * log_moment
        + c_pi * km * (pi / kf).ln()
        + mf * km / (2.0 * pi.powi(m as i32)) * logsin.value
        + mf * km * (ones + tail.value);
    Ok(SeriesValue {
        value,
        error_estimate: mf * km * (tail.error_estimate + logsin.error_estimate / (2.0 * pi.powi(m as i32))),
        terms_used: tail.terms_used,
        converged: true,
    })
}

/// `∫₀^π x^{m−1} ln sin x dx`.
///
/// Folded onto `[0, π/2]` by `x → π − x`; the `ln x` singularity is split off
/// and integrated exactly, leaving the smooth `ln(sin x / x)`.
pub fn logsin_moment(m: u32, tol: f64) -> Result<QuadratureResult> {
    check_args("logsin_moment", m, tol)?;
    let pi = CONSTANTS.pi;
    let half = 0.5 * pi;
    let p = m as i32 - 1;
    let weight = move |u: f64| u.powi(p) + (pi - u).powi(p);

    // ∫₀^{π/2} uʲ ln u du = (π/2)^{j+1}[ln(π/2)/(j+1) − 1/(j+1)²]
    let log_moment = |j: i32| {
        let j1 = f64::from(j + 1);
        half.powi(j + 1) * (half.ln() / j1 - 1.0 / (j1 * j1))
    };
    let mut singular = log_moment(p);
    let mut binom = 1.0;
    for j in 0..=p {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        singular += binom * sign * pi.powi(p - j) * log_moment(j);
        binom = binom * f64::from(p - j) / f64::from(j + 1);
    }

    let smooth = adaptive_quad(
        |u| {
            let r = if u < 1e-4 {
                -u * u / 6.0 - u.powi(4) / 180.0
            } else {
                (u.sin() / u).ln()
            };
            weight(u) * r
        },
        0.0,
        half,
        tol,
    )?;
    Ok(QuadratureResult {
        value: singular + smooth.value,
        ..smooth
    })
}

/// Middle term of the `n`-fold integration by parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm34Variant {
    /// `(−1)^{n+1} kᵐ n!/m`.
    AsPrinted,
    /// `−n! kᵐ/(m(m+1)⋯(m+n))`.
    Corrected,
}

/// `I(k, m)` after `n` integrations by parts; see [`thm34_recursion_variant`].
pub fn thm34_recursion(k: KScale, m: u32, n: u32, tol: f64) -> Result<SeriesValue> {
    thm34_recursion_variant(k, m, n, tol, Thm34Variant::Corrected)
}

/// `G(i) = ∫₀¹ t^{m+n} (i+t)^{−n−1} dt` and its `p`-th derivative in `i`.
fn hyper_term(m: u32, n: u32, p: u32, i: f64) -> Result<f64> {
    let a = f64::from(n + 1 + p);
    let b = f64::from(m + n + 1);
    let f = scalar::gauss_2f1_tol(a, b, b + 1.0, -1.0 / i, 1e-17)?.value;
    let rising: f64 = (0..p).map(|j| f64::from(n + 1 + j)).product();
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * rising * f / (b * i.powi((n + 1 + p) as i32)))
}

/// `I(k, m)` as the alternating `ψ_k^{(j)}(k)` prefix, the `i = 0` term and
/// the hypergeometric sum over `i ≥ 1`. `1 ≤ n ≤ 8`.
///
/// The `i`-sum is truncated at `N` with an Euler-Maclaurin tail; `N` doubles
/// until the tail remainder bound is below `tol`.
pub fn thm34_recursion_variant(k: KScale, m: u32, n: u32, tol: f64, variant: Thm34Variant) -> Result<SeriesValue> {
    check_args("thm34_recursion", m, tol)?;
    if !(1..=8).contains(&n) {
        return Err(Error::Parameter(format!(
            "thm34_recursion: n must be in 1..=8, got {n}"
        )));
    }
    let kf = k.get();
    let mf = f64::from(m);
    let km = kf.powi(m as i32);

    let mut prefix = 0.0;
    let mut denom = 1.0;
    for j in 0..n {
        denom *= mf + f64::from(j + 1);
        let psi = if j == 0 { psi_k(k, kf)? } else { psi_k_m(k, j, kf)? };
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        prefix += sign * kf.powi((m + 1 + j) as i32) / denom * psi;
    }
    let n_fact = scalar::factorial(n);
    let middle = match variant {
        Thm34Variant::AsPrinted => {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            sign * km * n_fact / mf
        }
        Thm34Variant::Corrected => -n_fact * km / (mf * denom),
    };
    let scale = n_fact * km / denom;

    let nn = f64::from(n);
    let b = f64::from(m + n + 1);
    let mut head = 0.0;
    let mut next = 1u32;
    let mut cutoff = 16u32;
    loop {
        while next < cutoff {
            head += hyper_term(m, n, 0, f64::from(next))?;
            next += 1;
        }
        let big_n = f64::from(cutoff);
        let integral =
            scalar::gauss_2f1_tol(nn, b, b + 1.0, -1.0 / big_n, 1e-17)?.value / (nn * b * big_n.powi(n as i32));
        let derivs = (0..8).map(|p| hyper_term(m, n, p, big_n)).collect::<Result<Vec<_>>>()?;
        let (tail, bound) = euler_maclaurin_tail(integral, &derivs);
        let rounding = 4.0 * f64::EPSILON * f64::from(cutoff).sqrt() * (head + tail);
        let err = scale * (bound + rounding);
        if err <= tol || cutoff >= 1 << 16 {
            return Ok(SeriesValue {
                value: prefix + middle - scale * (head + tail),
                error_estimate: err,
                terms_used: cutoff as usize,
                converged: err <= tol,
            });
        }
        cutoff *= 2;
    }
}

/// Evaluates `I(k, m)` by the chosen route. `n` only affects
/// [`FurduiMethod::Thm34`]; [`FurduiMethod::Eq310`] is the `n = 1` case with
/// the middle term as printed.
pub fn furdui_method(method: FurduiMethod, k: KScale, m: u32, n: u32, tol: f64) -> Result<FurduiMethodResult> {
    let series = |s: SeriesValue| (s.value, s.error_estimate, s.terms_used);
    let (value, error_estimate, terms) = match method {
        FurduiMethod::Oracle => {
            let q = furdui_oracle(k, m, tol)?;
            (q.value, q.error_estimate, q.subdivisions)
        }
        FurduiMethod::Thm31 => series(thm31_series(k, m, tol)?),
        FurduiMethod::Thm32Printed => series(thm32_series(k, m, tol, Thm32Variant::AsPrinted)?),
        FurduiMethod::Thm32Variant => series(thm32_series(k, m, tol, Thm32Variant::SignVariant)?),
        FurduiMethod::Thm33Printed => series(thm33_series(k, m, tol, Thm33Variant::AsPrinted)?),
        FurduiMethod::Thm33Variant => series(thm33_series(k, m, tol, Thm33Variant::LnGammaAudit)?),
        FurduiMethod::Thm34 => series(thm34_recursion(k, m, n, tol)?),
        FurduiMethod::Eq310 => series(thm34_recursion_variant(k, m, 1, tol, Thm34Variant::AsPrinted)?),
    };
    Ok(FurduiMethodResult {
        method_id: method,
        value,
        error_estimate,
        terms_or_subdivisions: terms,
    })
}
