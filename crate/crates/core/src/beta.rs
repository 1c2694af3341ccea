//! Nielsen k-beta function `β_k(x) = Σ (−1)ⁿ/(x + nk)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kfun::{psi_k, psi_k_m, KScale};
use crate::oracles::quadrature::{adaptive_quad, QuadratureResult};
use crate::oracles::series::{alt_series_cvz, TERM_CAP};
use crate::scalar::{self, SeriesValue, CONSTANTS};

fn check_positive(func: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(func, x, "x > 0, finite"))
    }
}

fn check_tol(func: &str, tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{func}: tol must be > 0, got {tol}")))
    }
}

/// `β_k(x) = ½[ψ_k((x+k)/2) − ψ_k(x/2)]`.
pub fn beta_k(k: KScale, x: f64) -> Result<f64> {
    check_positive("beta_k", x)?;
    let kf = k.get();
    let t = x / kf;
    // the ln k / k parts of the two ψ_k values cancel exactly
    Ok((scalar::digamma(0.5 * (t + 1.0))? - scalar::digamma(0.5 * t)?) / (2.0 * kf))
}

/// `β_k(x)` by the alternating series, accelerated.
pub fn beta_k_series(k: KScale, x: f64, tol: f64) -> Result<SeriesValue> {
    check_positive("beta_k_series", x)?;
    check_tol("beta_k_series", tol)?;
    let kf = k.get();
    alt_series_cvz(|n| 1.0 / (x + n as f64 * kf), tol, TERM_CAP)
}

/// `β_k(x) = ∫₀¹ t^{x−1}/(1 + t^k) dt` by quadrature.
///
/// For `x < 1` the substitution `t = s^{1/x}` removes the endpoint
/// singularity: the integral becomes `(1/x) ∫₀¹ ds/(1 + s^{k/x})`.
pub fn beta_k_integral(k: KScale, x: f64, tol: f64) -> Result<QuadratureResult> {
    check_positive("beta_k_integral", x)?;
    check_tol("beta_k_integral", tol)?;
    let kf = k.get();
    if x < 1.0 {
        let p = kf / x;
        let r = adaptive_quad(|s: f64| 1.0 / (1.0 + s.powf(p)), 0.0, 1.0, tol * x)?;
        Ok(QuadratureResult {
            value: r.value / x,
            error_estimate: r.error_estimate / x,
            ..r
        })
    } else {
        adaptive_quad(|t: f64| t.powf(x - 1.0) / (1.0 + t.powf(kf)), 0.0, 1.0, tol)
    }
}

/// `∫₀^∞ e^{−xt}/cosh(kt) dt`, which equals `β_k((x + k)/2)`, for `x > −k`.
///
/// The range is truncated at `T` with the dropped tail bounded by
/// `2e^{−(x+k)T}/(x+k)`; that bound is folded into the error estimate.
pub fn beta_k_cosh_form(k: KScale, x: f64, tol: f64) -> Result<QuadratureResult> {
    let kf = k.get();
    if !(x > -kf) || !x.is_finite() {
        return Err(Error::domain("beta_k_cosh_form", x, "x > -k, finite"));
    }
    check_tol("beta_k_cosh_form", tol)?;
    let a = x + kf;
    let t_max = ((10.0 / tol).ln() / a).max((20.0 / (tol * a)).ln() / a);
    let tail = 2.0 * (-a * t_max).exp() / a;
    // e^{−xt}/cosh(kt) = 2e^{−(x+k)t}/(1 + e^{−2kt}), free of overflow
    let f = |t: f64| 2.0 * (-a * t).exp() / (1.0 + (-2.0 * kf * t).exp());
    let r = adaptive_quad(f, 0.0, t_max, 0.5 * tol)?;
    Ok(QuadratureResult {
        error_estimate: r.error_estimate + tail,
        ..r
    })
}

/// `β_k^{(j)}(x) = 2^{−(j+1)}[ψ_k^{(j)}((x+k)/2) − ψ_k^{(j)}(x/2)]`; `j = 0`
/// gives `β_k` itself.
pub fn beta_k_deriv(k: KScale, order: u32, x: f64) -> Result<f64> {
    check_positive("beta_k_deriv", x)?;
    if order == 0 {
        return beta_k(k, x);
    }
    let kf = k.get();
    let hi = psi_k_m(k, order, 0.5 * (x + kf))?;
    let lo = psi_k_m(k, order, 0.5 * x)?;
    Ok((hi - lo) / 2f64.powi(order as i32 + 1))
}

/// Truncated power series of `β_k` about a center.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaExpansionTerms {
    pub center: f64,
    /// `coefficients[m]` multiplies `(x − center)^m`.
    pub coefficients: Vec<f64>,
    pub radius: f64,
    pub truncation_order: usize,
}

impl BetaExpansionTerms {
    /// Taylor coefficients of `β_k` at `k`:
    /// `β_k(k + h) = ln2/k + Σ (−1)^m (1 − 2^{−m}) ζ(m+1) h^m / k^{m+1}`.
    pub fn taylor_at_k(k: KScale, order: usize) -> Self {
        let kf = k.get();
        let mut coefficients = Vec::with_capacity(order + 1);
        coefficients.push(CONSTANTS.ln2 / kf);
        let mut kp = kf;
        for m in 1..=order {
            kp *= kf;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            coefficients.push(sign * taylor_weight(m) / kp);
        }
        BetaExpansionTerms {
            center: kf,
            coefficients,
            radius: kf,
            truncation_order: order,
        }
    }

    /// Horner evaluation at `x` (absolute position, not offset).
    pub fn evaluate(&self, x: f64) -> f64 {
        let h = x - self.center;
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * h + c)
    }
}

/// `(1 − 2^{−m}) ζ(m + 1)`, which lies in `(0, 1)` for `m ≥ 1`.
fn taylor_weight(m: usize) -> f64 {
    let s = (m + 1) as u32;
    let half = 0.5f64.powi(m as i32);
    1.0 - half + (1.0 - half) * scalar::zeta_int_minus_one(s)
}

/// Partial sum to `order` of the Taylor series of `β_k(x + k)`, `|x| < k`.
///
/// `converged` reports whether the truncation bound meets `tol`.
pub fn beta_taylor_54(k: KScale, x: f64, order: usize, tol: f64) -> Result<SeriesValue> {
    let kf = k.get();
    if !(x.abs() < kf) {
        return Err(Error::domain("beta_taylor_54", x, "|x| < k"));
    }
    check_tol("beta_taylor_54", tol)?;
    // Horner in u = x/k keeps the powers of k out of the coefficients
    let u = x / kf;
    let value = (1..=order).rev().fold(0.0, |acc, m| {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        (acc + sign * taylor_weight(m)) * u
    });
    let value = (value + CONSTANTS.ln2) / kf;
    let r = x.abs() / kf;
    let error_estimate = if x == 0.0 {
        0.0
    } else {
        // each weight is below 1, so the tail is dominated by a geometric series
        let geometric = r.powi(order as i32 + 1) / (kf * (1.0 - r));
        let next = taylor_weight(order + 1) * r.powi(order as i32 + 1) / kf;
        let decreasing = r * taylor_weight(order + 2) <= taylor_weight(order + 1);
        if x > 0.0 && decreasing {
            geometric.min(next)
        } else {
            geometric
        }
    };
    Ok(SeriesValue {
        value,
        error_estimate,
        terms_used: order + 1,
        converged: error_estimate <= tol,
    })
}

/// `β_k(x) = 1/x − 1/(x+k) + Σ (−1)^{n+1} ζ(n+1) [((x+k)/2)ⁿ − (x/2)ⁿ] / (2k^{n+1})`
/// for `0 < x < k`.
///
/// The inner binomial sum is evaluated as the power difference it equals.
/// Fails with a convergence error when the geometric tail bound has not
/// reached `tol` after `n_max` terms.
pub fn beta_expansion_55(k: KScale, x: f64, n_max: usize, tol: f64) -> Result<SeriesValue> {
    let kf = k.get();
    if !(x > 0.0 && x < kf) {
        return Err(Error::domain("beta_expansion_55", x, "0 < x < k"));
    }
    check_tol("beta_expansion_55", tol)?;
    let u = 0.5 * (x + kf) / kf;
    let v = 0.5 * x / kf;
    let mut sum = 1.0 / x - 1.0 / (x + kf);
    let mut un = 1.0;
    let mut vn = 1.0;
    for n in 1..=n_max {
        un *= u;
        vn *= v;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * scalar::zeta_int((n + 1) as i64)? * (un - vn) / (2.0 * kf);
        let bound = scalar::zeta_int((n + 2) as i64)? * un * u / (2.0 * kf * (1.0 - u));
        if bound <= tol {
            return Ok(SeriesValue {
                value: sum,
                error_estimate: bound,
                terms_used: n,
                converged: true,
            });
        }
    }
    Err(Error::Convergence {
        func: "beta_expansion_55",
        terms: n_max,
        estimate: sum,
        error: scalar::zeta_int((n_max + 2) as i64)? * un * u / (2.0 * kf * (1.0 - u)),
    })
}

/// Which argument pattern the telescoping sum uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TelescopeVariant {
    /// `Σ β_k((2k)^m x)` against `ψ_k(2ⁿkⁿx) − ψ_k(kx) − n ln2/k`.
    AsPrinted,
    /// `Σ β_k(2^m k x)` against `ψ_k(2ⁿkx) − ψ_k(kx) − n ln2/k`.
    Corrected,
}

/// Both sides of the telescoping β_k sum; `1 ≤ n ≤ 20`.
pub fn telescope_51(k: KScale, x: f64, n: u32, variant: TelescopeVariant) -> Result<(f64, f64)> {
    check_positive("telescope_51", x)?;
    if !(1..=20).contains(&n) {
        return Err(Error::Parameter(format!("telescope_51: n must be in 1..=20, got {n}")));
    }
    let kf = k.get();
    let step = match variant {
        TelescopeVariant::AsPrinted => 2.0 * kf,
        TelescopeVariant::Corrected => 2.0,
    };
    let base = match variant {
        TelescopeVariant::AsPrinted => x,
        TelescopeVariant::Corrected => kf * x,
    };
    let mut lhs = 0.0;
    let mut arg = base;
    for _ in 1..=n {
        arg *= step;
        if !arg.is_finite() {
            return Err(Error::Range {
                func: "telescope_51",
                value: x,
            });
        }
        lhs += beta_k(k, arg)?;
    }
    let top = match variant {
        TelescopeVariant::AsPrinted => (2.0 * kf).powi(n as i32) * x,
        TelescopeVariant::Corrected => 2f64.powi(n as i32) * kf * x,
    };
    if !top.is_finite() {
        return Err(Error::Range {
            func: "telescope_51",
            value: x,
        });
    }
    let rhs = psi_k(k, top)? - psi_k(k, kf * x)? - f64::from(n) * CONSTANTS.ln2 / kf;
    Ok((lhs, rhs))
}

/// `λ(x) = x β_k′(x) / β_k(x)²`.
pub fn lambda_27(k: KScale, x: f64) -> Result<f64> {
    let b = beta_k(k, x)?;
    Ok(x * beta_k_deriv(k, 1, x)? / (b * b))
}

/// Harmonic mean `2β_k(x)β_k(k²/x) / (β_k(x) + β_k(k²/x))`.
pub fn harmonic_mean_56(k: KScale, x: f64) -> Result<f64> {
    let kf = k.get();
    let a = beta_k(k, x)?;
    let b = beta_k(k, kf * kf / x)?;
    Ok(2.0 * a * b / (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{LN_2, PI};

    fn ks(k: f64) -> KScale {
        KScale::new(k).unwrap()
    }

    #[test]
    fn beta_k_examples() {
        for k in [0.5, 1.0, 2.0, 3.0] {
            assert_relative_eq!(beta_k(ks(k), k).unwrap(), LN_2 / k, max_relative = 1e-14);
        }
        assert_relative_eq!(beta_k(ks(1.0), 0.5).unwrap(), PI / 2.0, epsilon = 1e-14);
        assert_relative_eq!(beta_k(ks(1.0), 2.0).unwrap(), 1.0 - LN_2, epsilon = 1e-14);
        assert!(beta_k(ks(1.0), 0.0).is_err());
    }

    #[test]
    fn series_examples() {
        let s = beta_k_series(ks(1.0), 1.0, 1e-12).unwrap();
        assert!(s.converged && s.error_estimate <= 1e-12);
        assert_relative_eq!(s.value, LN_2, epsilon = 1e-12);
        assert_relative_eq!(
            beta_k_series(ks(2.0), 2.0, 1e-12).unwrap().value,
            LN_2 / 2.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            beta_k_series(ks(1.0), 3.0, 1e-12).unwrap().value,
            LN_2 - 0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn integral_examples() {
        let r = beta_k_integral(ks(1.0), 1.0, 1e-10).unwrap();
        assert_relative_eq!(r.value, LN_2, epsilon = 1e-9);
        let r = beta_k_integral(ks(2.0), 1.0, 1e-10).unwrap();
        assert_relative_eq!(r.value, PI / 4.0, epsilon = 1e-10);
        let r = beta_k_integral(ks(1.0), 0.5, 1e-10).unwrap();
        assert_relative_eq!(r.value, PI / 2.0, epsilon = 1e-9);
        let r = beta_k_integral(ks(PI), 0.01, 1e-10).unwrap();
        assert_relative_eq!(r.value, beta_k(ks(PI), 0.01).unwrap(), max_relative = 1e-10);
    }

    #[test]
    fn cosh_form_examples() {
        let r = beta_k_cosh_form(ks(1.0), 1.0, 1e-9).unwrap();
        assert_relative_eq!(r.value, LN_2, epsilon = 1e-8);
        let r = beta_k_cosh_form(ks(1.0), 0.0, 1e-9).unwrap();
        assert_relative_eq!(r.value, PI / 2.0, epsilon = 1e-8);
        let r = beta_k_cosh_form(ks(2.0), 2.0, 1e-9).unwrap();
        assert_relative_eq!(r.value, LN_2 / 2.0, epsilon = 1e-8);
        let r = beta_k_cosh_form(ks(2.0), -1.5, 1e-9).unwrap();
        assert_relative_eq!(r.value, beta_k(ks(2.0), 0.25).unwrap(), epsilon = 1e-8);
        assert!(beta_k_cosh_form(ks(2.0), -2.0, 1e-9).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_relative_eq!(beta_k_deriv(ks(1.0), 1, 1.0).unwrap(), -PI * PI / 12.0, epsilon = 1e-13);
        assert_relative_eq!(
            beta_k_deriv(ks(1.0), 2, 1.0).unwrap(),
            1.5 * 1.2020569031595942,
            epsilon = 1e-13
        );
        assert_relative_eq!(beta_k_deriv(ks(2.0), 1, 2.0).unwrap(), -PI * PI / 48.0, epsilon = 1e-13);
        assert_eq!(beta_k_deriv(ks(2.0), 0, 2.0).unwrap(), beta_k(ks(2.0), 2.0).unwrap());
    }

    #[test]
    fn taylor_examples() {
        assert_relative_eq!(
            beta_taylor_54(ks(1.0), 0.0, 5, 1e-10).unwrap().value,
            LN_2,
            epsilon = 1e-15
        );
        let s = beta_taylor_54(ks(1.0), 0.5, 60, 1e-10).unwrap();
        assert!(s.converged);
        assert_relative_eq!(s.value, 2.0 - PI / 2.0, epsilon = 1e-10);
        let s = beta_taylor_54(ks(2.0), -1.0, 80, 1e-9).unwrap();
        assert!(s.converged);
        assert_relative_eq!(s.value, PI / 4.0, epsilon = 1e-9);
        assert!(beta_taylor_54(ks(1.0), 1.0, 10, 1e-9).is_err());
        assert!(!beta_taylor_54(ks(1.0), 0.9, 10, 1e-9).unwrap().converged);
    }

    #[test]
    fn taylor_coefficients_alternate() {
        let t = BetaExpansionTerms::taylor_at_k(ks(1.5), 30);
        assert_eq!(t.coefficients.len(), 31);
        assert!(t.coefficients[1..].windows(2).all(|w| w[0] * w[1] < 0.0));
        let r = 0.9;
        let mags: Vec<f64> = (1..=30)
            .map(|m| t.coefficients[m].abs() * (r * 1.5f64).powi(m as i32))
            .collect();
        assert!(mags.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn expansion_examples() {
        let s = beta_expansion_55(ks(1.0), 0.5, 80, 1e-9).unwrap();
        assert_relative_eq!(s.value, PI / 2.0, epsilon = 1e-9);
        let s = beta_expansion_55(ks(2.0), 1.0, 80, 1e-9).unwrap();
        assert_relative_eq!(s.value, PI / 4.0, epsilon = 1e-9);
        // u = 0.95 needs several hundred terms for 1e-8
        assert!(matches!(
            beta_expansion_55(ks(1.0), 0.9, 120, 1e-8),
            Err(Error::Convergence { .. })
        ));
        let s = beta_expansion_55(ks(1.0), 0.9, 600, 1e-8).unwrap();
        assert_relative_eq!(s.value, beta_k(ks(1.0), 0.9).unwrap(), epsilon = 1e-8);
        assert!(beta_expansion_55(ks(1.0), 1.0, 80, 1e-9).is_err());
    }

    #[test]
    fn telescope_examples() {
        for v in [TelescopeVariant::AsPrinted, TelescopeVariant::Corrected] {
            let (l, r) = telescope_51(ks(1.0), 1.0, 1, v).unwrap();
            assert_relative_eq!(l, 1.0 - LN_2, epsilon = 1e-12);
            assert_relative_eq!(r, 1.0 - LN_2, epsilon = 1e-12);
        }
        let (l, r) = telescope_51(ks(2.0), 0.3, 2, TelescopeVariant::Corrected).unwrap();
        assert!((l - r).abs() < 1e-10);
        let (l, r) = telescope_51(ks(2.0), 0.3, 2, TelescopeVariant::AsPrinted).unwrap();
        assert!((l - r).abs() > 0.01);
        assert!(telescope_51(ks(2.0), 0.3, 21, TelescopeVariant::Corrected).is_err());
    }

    #[test]
    fn harmonic_mean_equality_at_k() {
        for k in [0.5, 1.0, 2.0, PI] {
            assert!((harmonic_mean_56(ks(k), k).unwrap() - LN_2 / k).abs() < 1e-12);
        }
    }
}
