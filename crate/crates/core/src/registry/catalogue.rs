//! The registered identities.

use std::f64::consts::PI;

use super::{Comparison, Expectation, FitSpec, GridSpec, IdentityEntry, Normalization, Params, Sides};
use crate::beta::{
    beta_expansion_55, beta_k, beta_k_cosh_form, beta_k_deriv, beta_k_integral, beta_k_series, beta_taylor_54,
    harmonic_mean_56, lambda_27, telescope_51, TelescopeVariant,
};
use crate::error::{Error, Result};
use crate::furdui::{
    furdui_oracle, thm31_series, thm32_series, thm33_series, thm34_recursion_variant, Thm32Variant, Thm33Variant,
    Thm34Variant,
};
use crate::hadamard::{
    alpha0_gap, alpha0_solve, functional_eq_41, hadamard_k, lerch_identity_410, recursion_47, recursion_47_closed,
    representation_48, superadditivity_sides, ClosedFormVariant, LerchVariant,
};
use crate::kfun::{
    gamma_k, gamma_k_integral, psi_k, psi_k_duplication_rhs, psi_k_m, psi_k_m_series, psi_k_series, KScale,
};
use crate::oracles::{adaptive_quad, cm_probe, FitMode};
use crate::scalar::{self, CONSTANTS};

use Comparison::*;
use Expectation::{Fail, Pass};

fn pt(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
}

fn get(p: &Params, name: &str) -> Result<f64> {
    p.get(name)
        .copied()
        .ok_or_else(|| Error::Parameter(format!("missing grid parameter '{name}'")))
}

fn kscale(p: &Params) -> Result<KScale> {
    KScale::new(get(p, "k")?)
}

fn int(p: &Params, name: &str) -> Result<u32> {
    Ok(get(p, name)? as u32)
}

fn converged(s: scalar::SeriesValue, func: &'static str) -> Result<f64> {
    if s.converged {
        Ok(s.value)
    } else {
        Err(Error::Convergence {
            func,
            terms: s.terms_used,
            estimate: s.value,
            error: s.error_estimate,
        })
    }
}

/// Distance of `x/k` to the nearest integer.
fn integer_distance(p: &Params) -> f64 {
    match (p.get("k"), p.get("x")) {
        (Some(k), Some(x)) => {
            let t = x / k;
            (t - t.round()).abs()
        }
        _ => f64::INFINITY,
    }
}

fn x_distance(p: &Params) -> f64 {
    p.get("x").map_or(f64::INFINITY, |x| x.abs())
}

// ---- point generators ----

fn scaled(grid: &GridSpec, ts: &[f64]) -> Vec<Params> {
    grid.k_values
        .iter()
        .flat_map(|&k| ts.iter().map(move |&t| pt(&[("k", k), ("x", t * k)])))
        .collect()
}

fn union(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = a.iter().chain(b).copied().collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

fn k_x(grid: &GridSpec) -> Vec<Params> {
    let ts: Vec<f64> = grid.x_values.iter().copied().filter(|t| *t > 0.0).collect();
    scaled(grid, &ts)
}

fn k_x_below_k(grid: &GridSpec) -> Vec<Params> {
    let ts: Vec<f64> = grid.x_values.iter().copied().filter(|t| *t > 0.0 && *t < 1.0).collect();
    scaled(grid, &ts)
}

fn k_x_signed(grid: &GridSpec) -> Vec<Params> {
    scaled(grid, &union(&grid.x_values, &grid.signed_values))
}

fn k_x_shifted(grid: &GridSpec) -> Vec<Params> {
    let ts: Vec<f64> = union(&grid.x_values, &grid.signed_values)
        .into_iter()
        .filter(|t| *t > -1.0)
        .collect();
    scaled(grid, &ts)
}

fn k_x_taylor(grid: &GridSpec) -> Vec<Params> {
    let ts: Vec<f64> = union(&grid.x_values, &grid.signed_values)
        .into_iter()
        .filter(|t| t.abs() < 1.0)
        .collect();
    scaled(grid, &ts)
}

fn k_x_wide(grid: &GridSpec) -> Vec<Params> {
    scaled(grid, &union(&union(&grid.x_values, &grid.signed_values), &[-2.0, -1.5]))
}

fn k_x_n(grid: &GridSpec) -> Vec<Params> {
    let ns = grid.ints("n", &[1, 2, 3]);
    k_x_signed(grid)
        .into_iter()
        .flat_map(|p| {
            ns.iter().map(move |&n| {
                let mut q = p.clone();
                q.insert("n".into(), f64::from(n));
                q
            })
        })
        .collect()
}

fn k_x_m(grid: &GridSpec) -> Vec<Params> {
    let ms = grid.ints("m", &[1, 2, 3]);
    k_x(grid)
        .into_iter()
        .flat_map(|p| {
            ms.iter().map(move |&m| {
                let mut q = p.clone();
                q.insert("m".into(), f64::from(m));
                q
            })
        })
        .collect()
}

/// `x` unscaled: the identity's argument is already `k x`.
fn k_raw_x(grid: &GridSpec) -> Vec<Params> {
    grid.k_values
        .iter()
        .flat_map(|&k| {
            grid.x_values
                .iter()
                .filter(|t| **t > 0.0)
                .map(move |&x| pt(&[("k", k), ("x", x)]))
        })
        .collect()
}

fn k_raw_x_n(grid: &GridSpec) -> Vec<Params> {
    let ns = grid.ints("n", &[1, 2, 3]);
    k_raw_x(grid)
        .into_iter()
        .flat_map(|p| {
            ns.iter().map(move |&n| {
                let mut q = p.clone();
                q.insert("n".into(), f64::from(n));
                q
            })
        })
        .collect()
}

fn k_only(grid: &GridSpec) -> Vec<Params> {
    grid.k_values.iter().map(|&k| pt(&[("k", k)])).collect()
}

fn k_m(grid: &GridSpec) -> Vec<Params> {
    let ms = grid.ints("m", &[1, 2, 3, 4, 5, 6]);
    grid.k_values
        .iter()
        .flat_map(|&k| {
            ms.iter()
                .filter(|m| **m >= 1)
                .map(move |&m| pt(&[("k", k), ("m", f64::from(m))]))
        })
        .collect()
}

fn k_m_n(grid: &GridSpec) -> Vec<Params> {
    let ns = grid.ints("n", &[1, 2, 3]);
    k_m(grid)
        .into_iter()
        .flat_map(|p| {
            ns.iter().filter(|n| (1..=8).contains(*n)).map(move |&n| {
                let mut q = p.clone();
                q.insert("n".into(), f64::from(n));
                q
            })
        })
        .collect()
}

fn lerch_points(grid: &GridSpec) -> Vec<Params> {
    grid.signed_values
        .iter()
        .filter(|x| x.abs() < 1.0)
        .map(|&x| pt(&[("x", x)]))
        .collect()
}

fn lemma23_points(grid: &GridSpec) -> Vec<Params> {
    let ms = grid.ints("m", &[1, 2, 3]);
    let ns = grid.ints("n", &[1, 2, 3]);
    let mut out = Vec::new();
    for &u in grid.x_values.iter().filter(|u| **u > 0.0) {
        for &a in ms.iter().filter(|m| **m >= 1) {
            for &v in &ns {
                for bu in [0.5, 1.0] {
                    out.push(pt(&[("u", u), ("a", f64::from(a)), ("v", f64::from(v)), ("bu", bu)]));
                }
            }
        }
    }
    out
}

fn lambda_pairs(grid: &GridSpec) -> Vec<Params> {
    let mut ts: Vec<f64> = grid
        .x_values
        .iter()
        .copied()
        .filter(|t| *t > 0.0 && *t < 10.0)
        .collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    grid.k_values
        .iter()
        .flat_map(|&k| {
            ts.windows(2)
                .map(move |w| pt(&[("k", k), ("x", w[0] * k), ("x_next", w[1] * k)]))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn superadditive_points(grid: &GridSpec) -> Vec<Params> {
    const OFFSETS: [f64; 6] = [0.0, 0.1, 0.25, 0.5, 1.0, 2.0];
    let mut out = Vec::new();
    for &k in &grid.k_values {
        let Ok(root) = KScale::new(k).and_then(|ks| alpha0_solve(ks, 1e-10)) else {
            continue;
        };
        let base = root.root + 0.01 * k;
        for (i, a) in OFFSETS.iter().enumerate() {
            for b in &OFFSETS[i..] {
                out.push(pt(&[("k", k), ("x", base + a * k), ("y", base + b * k)]));
            }
        }
    }
    out
}

fn sharpness_points(grid: &GridSpec) -> Vec<Params> {
    grid.k_values
        .iter()
        .flat_map(|&k| [1.01, 1.2, 1.4].map(|t| pt(&[("k", k), ("x", t * k), ("y", t * k)])))
        .collect()
}

fn factorial_points(_: &GridSpec) -> Vec<Params> {
    (1..=5).map(|n| pt(&[("k", 1.0), ("n", f64::from(n))])).collect()
}

fn glaisher_point(_: &GridSpec) -> Vec<Params> {
    vec![pt(&[("k", 1.0), ("m", 2.0)])]
}

// ---- evaluators ----

fn furdui_tol(k: f64, m: u32) -> f64 {
    1e-13 * k.powi(m as i32).max(1.0)
}

fn oracle(p: &Params) -> Result<(KScale, u32, f64)> {
    let k = kscale(p)?;
    let m = int(p, "m")?;
    let value = furdui_oracle(k, m, furdui_tol(k.get(), m))?.value;
    Ok((k, m, value))
}

fn thm32(p: &Params, variant: Thm32Variant) -> Result<Sides> {
    let (k, m, o) = oracle(p)?;
    Ok((o, thm32_series(k, m, furdui_tol(k.get(), m), variant)?.value))
}

fn thm33(p: &Params, variant: Thm33Variant) -> Result<Sides> {
    let (k, m, o) = oracle(p)?;
    Ok((o, thm33_series(k, m, furdui_tol(k.get(), m), variant)?.value))
}

fn thm34(p: &Params, n: u32, variant: Thm34Variant) -> Result<Sides> {
    let (k, m, o) = oracle(p)?;
    let s = thm34_recursion_variant(k, m, n, 1e-11 * k.get().powi(m as i32).max(1.0), variant)?;
    Ok((o, converged(s, "thm34_recursion")?))
}

fn reflection(p: &Params, constant: f64) -> Result<Sides> {
    let k = kscale(p)?;
    let x = get(p, "x")?;
    let kf = k.get();
    let lhs = gamma_k(k, x)? * gamma_k(k, kf - x)?;
    Ok((lhs, constant / scalar::sin_pi(x / kf)))
}

fn duplication(p: &Params, corrected: bool) -> Result<Sides> {
    let k = kscale(p)?;
    let x = get(p, "x")?;
    let kf = k.get();
    let c = if corrected {
        (kf / PI).sqrt()
    } else {
        1.0 / (kf * PI).sqrt()
    };
    let lhs = gamma_k(k, 2.0 * kf * x)?;
    let rhs = 2f64.powf(2.0 * x - 1.0) * c * gamma_k(k, kf * x)? * gamma_k(k, kf * x + 0.5 * kf)?;
    Ok((lhs, rhs))
}

fn telescope(p: &Params, variant: TelescopeVariant) -> Result<Sides> {
    telescope_51(kscale(p)?, get(p, "x")?, int(p, "n")?, variant)
}

fn closed_form(p: &Params, variant: ClosedFormVariant) -> Result<Sides> {
    let k = kscale(p)?;
    let x = get(p, "x")?;
    let n = int(p, "n")?;
    Ok((recursion_47(k, x, n)?, recursion_47_closed(k, x, n, variant)?))
}

fn representation(p: &Params, corrected: bool) -> Result<Sides> {
    let k = kscale(p)?;
    let x = get(p, "x")?;
    let (lhs, printed) = representation_48(k, x)?;
    Ok((lhs, if corrected { k.get() * printed } else { printed }))
}

fn superadditive(p: &Params) -> Result<Sides> {
    superadditivity_sides(kscale(p)?, get(p, "x")?, get(p, "y")?)
}

fn glaisher(p: &Params, power: i32) -> Result<Sides> {
    let (_, _, o) = oracle(p)?;
    let a = CONSTANTS.glaisher_a;
    Ok((o, (a.powi(power) / (2.0 * PI).sqrt()).ln()))
}

struct Builder(IdentityEntry);

impl Builder {
    fn poles(mut self, f: fn(&Params) -> f64) -> Self {
        self.0.pole_distance = Some(f);
        self
    }

    fn fit(mut self, mode: FitMode, group_by: &'static [&'static str], normalization: Normalization) -> Self {
        self.0.fit = Some(FitSpec {
            mode,
            group_by,
            normalization,
        });
        self
    }

    fn done(self) -> IdentityEntry {
        self.0
    }
}

fn entry(
    id: &'static str,
    anchor: &'static str,
    comparison: Comparison,
    default_tol: f64,
    expectation: Expectation,
    points: fn(&GridSpec) -> Vec<Params>,
    eval: fn(&Params) -> Result<Sides>,
) -> Builder {
    Builder(IdentityEntry {
        id,
        anchor,
        comparison,
        default_tol,
        expectation,
        fit: None,
        points,
        pole_distance: None,
        eval,
    })
}

/// Every registered identity, in id order.
pub fn catalogue() -> Vec<IdentityEntry> {
    let mut entries = vec![
        // k-gamma family
        entry("EQ1.1", "Γ_k(x+k) = x Γ_k(x)", Relative, 1e-11, Pass, k_x, |p| {
            let k = kscale(p)?;
            let x = get(p, "x")?;
            Ok((gamma_k(k, x + k.get())?, x * gamma_k(k, x)?))
        })
        .done(),
        entry(
            "EQ1.2",
            "ψ_k(x) = (ln k − γ)/k − 1/x + Σ x/(nk(nk+x))",
            Relative,
            1e-11,
            Pass,
            k_x,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((psi_k(k, x)?, psi_k_series(k, x, 1e-12)?.value))
            },
        )
        .done(),
        entry(
            "EQ1.3",
            "ψ_k^(m)(x) = (−1)^{m+1} m! Σ 1/(nk+x)^{m+1}",
            Relative,
            1e-10,
            Pass,
            k_x_m,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                let m = int(p, "m")?;
                let lhs = psi_k_m(k, m, x)?;
                Ok((lhs, psi_k_m_series(k, m, x, 1e-13 * lhs.abs().max(1.0))?.value))
            },
        )
        .done(),
        entry("LEM2.4", "ψ_k(x+k) = ψ_k(x) + 1/x", Relative, 1e-11, Pass, k_x, |p| {
            let k = kscale(p)?;
            let x = get(p, "x")?;
            Ok((psi_k(k, x + k.get())?, psi_k_series(k, x, 1e-12)?.value + 1.0 / x))
        })
        .done(),
        entry(
            "EQ2.1",
            "Γ_k(x) = ∫₀^∞ t^{x−1} e^{−t^k/k} dt",
            Relative,
            1e-7,
            Pass,
            k_x,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((gamma_k(k, x)?, gamma_k_integral(k, x, 1e-11)?.value))
            },
        )
        .done(),
        entry(
            "EQ2.2-printed",
            "Γ_k(x)Γ_k(k−x) = π/sin(πx/k)",
            Relative,
            1e-10,
            Fail,
            k_x_below_k,
            |p| reflection(p, PI),
        )
        .poles(integer_distance)
        .fit(FitMode::Ratio, &["k"], Normalization::None)
        .done(),
        entry(
            "EQ2.2-corrected",
            "Γ_k(x)Γ_k(k−x) = (π/k)/sin(πx/k)",
            Relative,
            1e-10,
            Pass,
            k_x_below_k,
            |p| reflection(p, PI / get(p, "k")?),
        )
        .poles(integer_distance)
        .done(),
        entry(
            "LEM2.3",
            "∫₀^u x^{a−1}(1+bx)^{−v} dx = (u^a/a) F(v,a;1+a;−bu)",
            Relative,
            1e-8,
            Pass,
            lemma23_points,
            |p| {
                let u = get(p, "u")?;
                let a = get(p, "a")?;
                let v = get(p, "v")?;
                let b = get(p, "bu")? / u;
                let lhs = adaptive_quad(|x| x.powf(a - 1.0) * (1.0 + b * x).powf(-v), 0.0, u, 1e-13)?.value;
                let rhs = u.powf(a) / a * scalar::gauss_2f1(v, a, 1.0 + a, -b * u)?.value;
                Ok((lhs, rhs))
            },
        )
        .done(),
        entry(
            "EQ5.5-printed",
            "Γ_k(2kx) = 2^{2x−1}/√(kπ) Γ_k(kx)Γ_k(kx+k/2)",
            Relative,
            1e-10,
            Fail,
            k_raw_x,
            |p| duplication(p, false),
        )
        .fit(FitMode::Ratio, &["k"], Normalization::None)
        .done(),
        entry(
            "EQ5.5-corrected",
            "Γ_k(2kx) = 2^{2x−1}√(k/π) Γ_k(kx)Γ_k(kx+k/2)",
            Relative,
            1e-10,
            Pass,
            k_raw_x,
            |p| duplication(p, true),
        )
        .done(),
        entry(
            "EQ5.55",
            "ψ_k(kx+k/2) = 2ψ_k(2kx) − ψ_k(kx) − 2ln2/k",
            Relative,
            1e-11,
            Pass,
            k_raw_x,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                let kf = k.get();
                Ok((psi_k(k, kf * x + 0.5 * kf)?, psi_k_duplication_rhs(k, x)?))
            },
        )
        .done(),
        // Nielsen beta
        entry(
            "THM5.2",
            "β_k(x) = Σ (−1)ⁿ/(x+nk)",
            Relative,
            1e-11,
            Pass,
            k_x,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((beta_k(k, x)?, beta_k_series(k, x, 1e-15)?.value))
            },
        )
        .done(),
        entry(
            "EQ5.2-integral",
            "β_k(x) = ∫₀¹ t^{x−1}/(1+t^k) dt",
            Relative,
            1e-8,
            Pass,
            k_x,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((beta_k(k, x)?, beta_k_integral(k, x, 1e-12)?.value))
            },
        )
        .done(),
        entry(
            "THM5.3",
            "β_k((x+k)/2) = ∫₀^∞ e^{−xt}/cosh(kt) dt",
            Relative,
            1e-8,
            Pass,
            k_x_shifted,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((beta_k(k, 0.5 * (x + k.get()))?, beta_k_cosh_form(k, x, 1e-12)?.value))
            },
        )
        .done(),
        entry(
            "THM5.4",
            "β_k(x+k) = ln2/k + Σ (−1)^m (1−2^{−m})ζ(m+1) x^m/k^{m+1}",
            Relative,
            1e-8,
            Pass,
            k_x_taylor,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                let s = beta_taylor_54(k, x, 4000, 1e-12)?;
                Ok((beta_k(k, x + k.get())?, converged(s, "beta_taylor_54")?))
            },
        )
        .done(),
        entry(
            "THM5.5",
            "β_k(x) = 1/x − 1/(x+k) + Σ (−1)^{n+1} ζ(n+1)[((x+k)/2)ⁿ − (x/2)ⁿ]/(2k^{n+1})",
            Relative,
            1e-8,
            Pass,
            k_x_below_k,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((beta_k(k, x)?, beta_expansion_55(k, x, 5000, 1e-12)?.value))
            },
        )
        .done(),
        entry(
            "THM5.1-printed",
            "Σ_{m≤n} β_k((2k)^m x) = ψ_k(2ⁿkⁿx) − ψ_k(kx) − n ln2/k",
            Relative,
            1e-10,
            Fail,
            k_raw_x_n,
            |p| telescope(p, TelescopeVariant::AsPrinted),
        )
        .done(),
        entry(
            "THM5.1-corrected",
            "Σ_{m≤n} β_k(2^m k x) = ψ_k(2ⁿkx) − ψ_k(kx) − n ln2/k",
            Relative,
            1e-10,
            Pass,
            k_raw_x_n,
            |p| telescope(p, TelescopeVariant::Corrected),
        )
        .done(),
        entry("EQ5.11", "β_k(x+k) + β_k(x) = 1/x", Relative, 1e-11, Pass, k_x, |p| {
            let k = kscale(p)?;
            let x = get(p, "x")?;
            Ok((beta_k(k, x + k.get())? + beta_k(k, x)?, 1.0 / x))
        })
        .done(),
        entry(
            "REM5.4-lower",
            "1/x − ln2/k < β_k(x) on (0,k)",
            Less,
            0.0,
            Pass,
            k_x_below_k,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((1.0 / x - CONSTANTS.ln2 / k.get(), beta_k(k, x)?))
            },
        )
        .done(),
        entry(
            "REM5.4-upper",
            "β_k(x) < 1/x on (0,k)",
            Less,
            0.0,
            Pass,
            k_x_below_k,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                Ok((beta_k(k, x)?, 1.0 / x))
            },
        )
        .done(),
        entry(
            "REM5.4-refined",
            "β_k(x) < 1/x − ln2/k + π²x/(12k²) on (0,k)",
            Less,
            0.0,
            Pass,
            k_x_below_k,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                let kf = k.get();
                Ok((
                    beta_k(k, x)?,
                    1.0 / x - CONSTANTS.ln2 / kf + PI * PI * x / (12.0 * kf * kf),
                ))
            },
        )
        .done(),
        entry(
            "LEM2.5",
            "x β_k(x) completely monotone on [0.2k, 5k] (6 orders, h = 0.1k)",
            Absolute,
            0.0,
            Pass,
            k_only,
            |p| {
                let k = kscale(p)?;
                let kf = k.get();
                let verdict = cm_probe(
                    |x| x * beta_k(k, x).unwrap_or(f64::NAN),
                    0.2 * kf,
                    5.0 * kf,
                    0.1 * kf,
                    6,
                )?;
                Ok((if verdict.passed() { 0.0 } else { 1.0 }, 0.0))
            },
        )
        .done(),
        entry(
            "LEM2.6",
            "2β_k′(x)² − β_k″(x)β_k(x) > 0",
            Greater,
            0.0,
            Pass,
            k_x,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                let d1 = beta_k_deriv(k, 1, x)?;
                Ok((2.0 * d1 * d1 - beta_k_deriv(k, 2, x)? * beta_k(k, x)?, 0.0))
            },
        )
        .done(),
        entry(
            "LEM2.7",
            "λ(x) = x β_k′(x)/β_k(x)² strictly decreasing",
            Less,
            0.0,
            Pass,
            lambda_pairs,
            |p| {
                let k = kscale(p)?;
                Ok((lambda_27(k, get(p, "x_next")?)?, lambda_27(k, get(p, "x")?)?))
            },
        )
        .done(),
        entry(
            "THM5.6",
            "2β_k(x)β_k(k²/x)/(β_k(x)+β_k(k²/x)) ≤ ln2/k",
            LessEq,
            1e-12,
            Pass,
            k_x,
            |p| {
                let k = kscale(p)?;
                Ok((harmonic_mean_56(k, get(p, "x")?)?, CONSTANTS.ln2 / k.get()))
            },
        )
        .done(),
        entry("SCALE-beta", "β_k(x) = β(x/k)/k", Relative, 1e-11, Pass, k_x, |p| {
            let k = kscale(p)?;
            let x = get(p, "x")?;
            let one = KScale::new(1.0)?;
            Ok((beta_k_series(k, x, 1e-15)?.value, beta_k(one, x / k.get())? / k.get()))
        })
        .done(),
        // Hadamard
        entry("REM4.1", "H_k(k) = 1", Absolute, 1e-12, Pass, k_only, |p| {
            let k = kscale(p)?;
            Ok((hadamard_k(k, k.get()), 1.0))
        })
        .done(),
        entry(
            "THM4.1",
            "H_k(x+k) = x H_k(x) + 1/Γ_k(k−x)",
            Relative,
            1e-10,
            Pass,
            k_x_signed,
            |p| functional_eq_41(kscale(p)?, get(p, "x")?),
        )
        .done(),
        entry(
            "EQ4.7-printed",
            "H_k(x+nk) closed form with factors (x+1)x",
            Relative,
            1e-9,
            Fail,
            k_x_n,
            |p| closed_form(p, ClosedFormVariant::AsPrinted),
        )
        .done(),
        entry(
            "EQ4.7-corrected",
            "H_k(x+nk) = Π(x+ik) H_k(x) + Σ_j Π_{i>j}(x+ik)/Γ_k(k−x−jk)",
            Relative,
            1e-9,
            Pass,
            k_x_n,
            |p| closed_form(p, ClosedFormVariant::Corrected),
        )
        .done(),
        entry(
            "EQ4.8-printed",
            "H_k(x) = Γ_k(x)/k − Γ_k(x) sin(πx/k) β_k(x)/π",
            Relative,
            1e-10,
            Fail,
            k_x,
            |p| representation(p, false),
        )
        .poles(integer_distance)
        .fit(FitMode::Ratio, &["k"], Normalization::None)
        .done(),
        entry(
            "EQ4.8-corrected",
            "H_k(x) = Γ_k(x) − k Γ_k(x) sin(πx/k) β_k(x)/π",
            Relative,
            1e-10,
            Pass,
            k_x,
            |p| representation(p, true),
        )
        .poles(integer_distance)
        .done(),
        entry(
            "SCALE-H",
            "H_k(x) = k^{x/k−1} H(x/k)",
            Relative,
            1e-10,
            Pass,
            k_x_wide,
            |p| {
                let k = kscale(p)?;
                let x = get(p, "x")?;
                let t = x / k.get();
                Ok((
                    hadamard_k(k, x),
                    k.get().powf(t - 1.0) * hadamard_k(KScale::new(1.0)?, t),
                ))
            },
        )
        .done(),
        entry(
            "FACT-H",
            "H(n) = (n−1)!",
            Relative,
            1e-10,
            Pass,
            factorial_points,
            |p| {
                let n = int(p, "n")?;
                Ok((
                    hadamard_k(KScale::new(1.0)?, f64::from(n)),
                    scalar::gamma(f64::from(n))?,
                ))
            },
        )
        .done(),
        entry(
            "THM4.3",
            "k^{y/k}H_k(x) + k^{x/k}H_k(y) ≤ H_k(x+y) for x, y ≥ α₀",
            LessEq,
            1e-12,
            Pass,
            superadditive_points,
            superadditive,
        )
        .done(),
        entry(
            "THM4.3-sharpness",
            "superadditivity below α₀ (x = y < α₀)",
            LessEq,
            1e-12,
            Fail,
            sharpness_points,
            superadditive,
        )
        .done(),
        entry(
            "ALPHA0",
            "H_k(2α₀) = 2k^{α₀/k}H_k(α₀), α₀ ≥ 1.5k",
            Absolute,
            1e-10,
            Pass,
            k_only,
            |p| {
                let k = kscale(p)?;
                let r = alpha0_solve(k, 1e-10)?;
                Ok((alpha0_gap(k, r.root), 0.0))
            },
        )
        .done(),
        entry(
            "ALPHA0-scaling",
            "α₀(k) = k α₀(1)",
            Relative,
            1e-9,
            Pass,
            k_only,
            |p| {
                let k = kscale(p)?;
                let one = alpha0_solve(KScale::new(1.0)?, 1e-10)?.root;
                Ok((alpha0_solve(k, 1e-10)?.root, k.get() * one))
            },
        )
        .done(),
        entry(
            "THM4.4-printed",
            "2xΦ(−1,1,−x) = Φ(1,1,1−x/2) − Φ(1,1,½−x/2)",
            Absolute,
            1e-11,
            Fail,
            lerch_points,
            |p| lerch_identity_410(get(p, "x")?, LerchVariant::AsPrinted),
        )
        .poles(x_distance)
        .done(),
        entry(
            "THM4.4-corrected",
            "2Φ(−1,1,1−x) = Φ(1,1,½−x/2) − Φ(1,1,1−x/2)",
            Absolute,
            1e-11,
            Pass,
            lerch_points,
            |p| lerch_identity_410(get(p, "x")?, LerchVariant::Corrected),
        )
        .done(),
        // moment integrals
        entry(
            "THM3.1",
            "∫₀ᵏ xᵐψ_k = kᵐ(ln k − γ)/(m+1) − kᵐ/m + kᵐ Σ (−1)ˢζ(s)/(m+s)",
            Relative,
            1e-10,
            Pass,
            k_m,
            |p| {
                let (k, m, o) = oracle(p)?;
                Ok((o, thm31_series(k, m, furdui_tol(k.get(), m))?.value))
            },
        )
        .done(),
        entry(
            "THM3.2-printed",
            "∫₀ᵏ xᵐψ_k = kᵐ(ln k − mγ)/(m+1) − kᵐ/m + m kᵐ Σ (−1)^{s+1}ζ(s)/(s(m+s))",
            Relative,
            1e-10,
            Fail,
            k_m,
            |p| thm32(p, Thm32Variant::AsPrinted),
        )
        .fit(FitMode::Offset, &[], Normalization::MKPowMOverMPlusOne)
        .done(),
        entry(
            "THM3.2-corrected",
            "∫₀ᵏ xᵐψ_k = kᵐ(ln k + mγ)/(m+1) − kᵐ/m + m kᵐ Σ (−1)^{s+1}ζ(s)/(s(m+s))",
            Relative,
            1e-10,
            Pass,
            k_m,
            |p| thm32(p, Thm32Variant::SignVariant),
        )
        .done(),
        entry(
            "THM3.3-printed",
            "log-sine series with (3m/2)(kᵐ ln k/m − kᵐ/m²) + kᵐ ln(π/k)/2",
            Relative,
            1e-10,
            Fail,
            k_m,
            |p| thm33(p, Thm33Variant::AsPrinted),
        )
        .fit(FitMode::Offset, &["m"], Normalization::KPowM)
        .done(),
        entry(
            "THM3.3-corrected",
            "log-sine series with (m/2)(kᵐ ln k/m − kᵐ/m²) − kᵐ ln(π/k)/2",
            Relative,
            1e-10,
            Pass,
            k_m,
            |p| thm33(p, Thm33Variant::Corrected),
        )
        .done(),
        entry(
            "EQ3.8",
            "∫₀ᵏ xᵐψ_k = −m ∫₀ᵏ x^{m−1} ln Γ_k(x) dx",
            Relative,
            1e-10,
            Pass,
            k_m,
            |p| thm33(p, Thm33Variant::LnGammaAudit),
        )
        .done(),
        entry(
            "THM3.4-printed",
            "n-fold parts with middle term (−1)^{n+1} kᵐ n!/m",
            Relative,
            1e-8,
            Fail,
            k_m_n,
            |p| thm34(p, int(p, "n")?, Thm34Variant::AsPrinted),
        )
        .fit(FitMode::Offset, &["m", "n"], Normalization::KPowM)
        .done(),
        entry(
            "THM3.4-corrected",
            "n-fold parts with middle term −n! kᵐ/(m(m+1)⋯(m+n))",
            Relative,
            1e-8,
            Pass,
            k_m_n,
            |p| thm34(p, int(p, "n")?, Thm34Variant::Corrected),
        )
        .done(),
        entry(
            "EQ3.10-printed",
            "kᵐ⁺¹ψ_k(k)/(m+1) + kᵐ/m − Σ kᵐ F(2,m+2;m+3;−1/i)/((m+1)(m+2)i²)",
            Relative,
            1e-8,
            Fail,
            k_m,
            |p| thm34(p, 1, Thm34Variant::AsPrinted),
        )
        .fit(FitMode::Offset, &["m"], Normalization::KPowM)
        .done(),
        entry(
            "EQ3.10-corrected",
            "kᵐ⁺¹ψ_k(k)/(m+1) − kᵐ/(m(m+1)) − Σ kᵐ F(2,m+2;m+3;−1/i)/((m+1)(m+2)i²)",
            Relative,
            1e-8,
            Pass,
            k_m,
            |p| thm34(p, 1, Thm34Variant::Corrected),
        )
        .done(),
        entry(
            "FURDUI-GLAISHER-printed",
            "∫₀¹ x²ψ(x) dx = ln(A/√(2π))",
            Absolute,
            1e-7,
            Fail,
            glaisher_point,
            |p| glaisher(p, 1),
        )
        .done(),
        entry(
            "FURDUI-GLAISHER-corrected",
            "∫₀¹ x²ψ(x) dx = ln(A²/√(2π))",
            Absolute,
            1e-7,
            Pass,
            glaisher_point,
            |p| glaisher(p, 2),
        )
        .done(),
        entry(
            "FURDUI-scaling",
            "I(k,m) = kᵐ[ln k/(m+1) + I(1,m)]",
            Relative,
            1e-10,
            Pass,
            k_m,
            |p| {
                let (k, m, o) = oracle(p)?;
                let one = furdui_oracle(KScale::new(1.0)?, m, 1e-13)?.value;
                let kf = k.get();
                Ok((o, kf.powi(m as i32) * (kf.ln() / (f64::from(m) + 1.0) + one)))
            },
        )
        .done(),
    ];
    entries.sort_by(|a, b| a.id.cmp(b.id));
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::hadamard_k_reflection;

    #[test]
    fn reflection_route_is_independent_of_recurrence() {
        let k = KScale::new(2.0).unwrap();
        let a = hadamard_k_reflection(k, 3.3).unwrap();
        assert!((a - hadamard_k(k, 3.3)).abs() < 1e-11);
    }
}
