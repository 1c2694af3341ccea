use ksf_core::registry::{reports_to_json, run_all, run_identity, GridSpec, Verdict};
use ksf_core::FitMode;

#[test]
fn default_grid_has_no_unexpected_failures() {
    let summary = run_all(&GridSpec::default()).unwrap();
    let bad: Vec<_> = summary
        .identities
        .iter()
        .filter(|s| s.unexpected_fail())
        .map(|s| s.id.as_str())
        .collect();
    assert!(bad.is_empty(), "unexpected failures: {bad:?}");
    let missing: Vec<_> = summary
        .identities
        .iter()
        .filter(|s| s.missing_fail())
        .map(|s| s.id.as_str())
        .collect();
    assert!(missing.is_empty(), "printed forms that did not fail: {missing:?}");
}

#[test]
fn constant_factor_fits_recover_k() {
    let summary = run_all(&GridSpec::default()).unwrap();
    type Expected = fn(f64) -> f64;
    let cases: [(&str, Expected); 3] = [
        ("EQ5.5-printed", |k| k),
        ("EQ4.8-printed", |k| k),
        ("EQ2.2-printed", |k| 1.0 / k),
    ];
    for (id, expect) in cases {
        let s = summary.summary(id).unwrap();
        for g in &s.fits {
            let fit = g.fit.as_ref().unwrap();
            assert_eq!(fit.mode, FitMode::Ratio);
            let k = g.group["k"];
            assert!((fit.constant - expect(k)).abs() < 1e-9, "{id} k={k}: {}", fit.constant);
            assert!(fit.residual_rms < 1e-8);
        }
    }
}

#[test]
fn offset_fit_recovers_twice_euler_gamma() {
    let summary = run_all(&GridSpec::default()).unwrap();
    let s = summary.summary("THM3.2-printed").unwrap();
    let fit = s.fits[0].fit.as_ref().unwrap();
    assert!((fit.constant - 2.0 * 0.5772156649015329).abs() < 1e-9);
}

#[test]
fn poles_are_skipped_not_failed() {
    let grid = GridSpec {
        x_values: vec![1.0, 2.0, 0.5],
        ..GridSpec::default()
    };
    let reports = run_identity("EQ4.8-corrected", &grid, None).unwrap();
    let skips = reports.iter().filter(|r| r.verdict == Verdict::Skip).count();
    assert_eq!(skips, 2 * grid.k_values.len());
    assert!(reports.iter().all(|r| r.verdict != Verdict::Fail));
}

#[test]
fn reports_are_deterministic() {
    let a = reports_to_json(&run_all(&GridSpec::default()).unwrap().reports).unwrap();
    let b = reports_to_json(&run_all(&GridSpec::default()).unwrap().reports).unwrap();
    assert_eq!(a, b);
}
