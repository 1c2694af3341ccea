//! Shared workloads for the benchmarks in `benches/`.

use ksf_core::KScale;

/// `(k, x)` pairs spread over the default grid, with `x` in absolute units.
pub fn workload() -> Vec<(KScale, f64)> {
    let ks = [0.5, 1.0, 2.0, std::f64::consts::PI];
    let ts = [0.1, 0.35, 0.7, 1.0, 1.5, 2.5, 5.0];
    ks.iter()
        .flat_map(|&k| ts.iter().map(move |&t| (KScale::new(k).expect("positive k"), t * k)))
        .collect()
}
