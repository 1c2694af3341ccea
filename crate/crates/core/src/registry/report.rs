//! JSON, CSV and text renderings of registry output.

use std::fmt::Write as _;

use super::{Expectation, IdentityReport, RunSummary};
use crate::error::{Error, Result};

/// `v` with `digits` significant digits; exponent form outside `[1e-4, 1e10)`.
pub fn format_sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    if !(-4..10).contains(&mag) {
        return format!("{:.*e}", digits.saturating_sub(1), v);
    }
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

/// JSON array of reports. Non-finite numbers become `null`.
pub fn reports_to_json(reports: &[IdentityReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Parameter(format!("json encoding failed: {e}")))
}

/// CSV with columns `id, params, lhs, rhs, abs_diff, rel_diff, verdict`.
pub fn reports_to_csv(reports: &[IdentityReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let encode = |e: csv::Error| Error::Parameter(format!("csv encoding failed: {e}"));
    w.write_record(["id", "params", "lhs", "rhs", "abs_diff", "rel_diff", "verdict"])
        .map_err(encode)?;
    let num = |v: f64| if v.is_finite() { v.to_string() } else { String::new() };
    for r in reports {
        w.write_record([
            r.identity_id.clone(),
            r.params_string(),
            num(r.lhs),
            num(r.rhs),
            num(r.abs_diff),
            num(r.rel_diff),
            r.verdict.to_string(),
        ])
        .map_err(encode)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Parameter(format!("csv encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parameter(format!("csv encoding failed: {e}")))
}

/// One line per identity plus fitted constants and a closing tally.
pub fn summary_to_text(summary: &RunSummary) -> String {
    let mut out = String::new();
    let width = summary.identities.iter().map(|s| s.id.len()).max().unwrap_or(2).max(2);
    let _ = writeln!(
        out,
        "{:<width$}  {:>6}  {:>5}  {:>5}  {:>5}  {:>16}  status",
        "id", "expect", "pass", "fail", "skip", "worst_rel_diff"
    );
    for s in &summary.identities {
        let status = if s.unexpected_fail() {
            "UNEXPECTED FAIL"
        } else if s.missing_fail() {
            "expected FAIL not observed"
        } else {
            "ok"
        };
        let expect = match s.expectation {
            Expectation::Pass => "PASS",
            Expectation::Fail => "FAIL",
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>5}  {:>5}  {:>5}  {:>16}  {status}",
            s.id,
            expect,
            s.pass,
            s.fail,
            s.skip,
            format_sig(s.worst_rel_diff, 4)
        );
        for g in &s.fits {
            let group = if g.group.is_empty() {
                "all".to_string()
            } else {
                g.group
                    .iter()
                    .map(|(k, v)| format!("{k}={}", format_sig(*v, 10)))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            match &g.fit {
                Some(f) => {
                    let _ = writeln!(
                        out,
                        "{:<width$}    fit[{group}] {:?} constant={} residual_rms={} n={}",
                        "",
                        f.mode,
                        format_sig(f.constant, 10),
                        format_sig(f.residual_rms, 3),
                        f.n_points
                    );
                }
                None => {
                    let _ = writeln!(out, "{:<width$}    fit[{group}] unavailable: {}", "", g.note);
                }
            }
        }
    }
    let (pass, fail, skip) = summary
        .identities
        .iter()
        .fold((0, 0, 0), |acc, s| (acc.0 + s.pass, acc.1 + s.fail, acc.2 + s.skip));
    let _ = writeln!(
        out,
        "{} identities, {pass} PASS, {fail} FAIL, {skip} SKIP, {} unexpected",
        summary.identities.len(),
        summary.unexpected_failures()
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{Params, Verdict};

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(std::f64::consts::LN_2, 10), "0.6931471806");
        assert_eq!(format_sig(-0.91893853320467274, 10), "-0.9189385332");
        assert_eq!(format_sig(24.0, 10), "24.00000000");
        assert_eq!(format_sig(1.5e-12, 3), "1.50e-12");
        assert_eq!(format_sig(0.0, 10), "0");
    }

    #[test]
    fn nan_serializes_as_null_and_csv_blank() {
        let p: Params = [("k".to_string(), 1.0), ("x".to_string(), 0.5)].into();
        let r = IdentityReport::new("EQ1.1", p, f64::NAN, 1.0, Verdict::Skip, "pole".into());
        let json = reports_to_json(std::slice::from_ref(&r)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v[0]["lhs"].is_null());
        assert_eq!(v[0]["verdict"], "SKIP");
        assert_eq!(v[0]["params"]["x"], 0.5);
        let csv = reports_to_csv(&[r]).unwrap();
        assert_eq!(csv.lines().nth(1).unwrap(), "EQ1.1,k=1;x=0.5,,1,,,SKIP");
    }
}
