#![allow(clippy::excessive_precision)]

//! Point values frozen from an independent 40-digit evaluation.

use std::f64::consts::{LN_2, PI};

use approx::assert_relative_eq;
use ksf_core::beta::beta_k;
use ksf_core::furdui::furdui_oracle;
use ksf_core::hadamard::{alpha0_solve, hadamard_k};
use ksf_core::kfun::{gamma_k, psi_k, psi_k_m};
use ksf_core::scalar::{gauss_2f1, gauss_2f1_direct, zeta_int};
use ksf_core::KScale;

fn ks(k: f64) -> KScale {
    KScale::new(k).unwrap()
}

#[test]
fn k_gamma_and_digamma() {
    assert_relative_eq!(gamma_k(ks(2.0), 3.0).unwrap(), 1.2533141373155003, max_relative = 1e-13);
    assert_relative_eq!(gamma_k(ks(0.5), 0.8).unwrap(), 0.5895002858910565, max_relative = 1e-13);
    assert_relative_eq!(
        gamma_k(ks(3.0), -1.3).unwrap(),
        -0.75069368113611718,
        max_relative = 1e-12
    );
    assert_relative_eq!(psi_k(ks(0.5), 0.3).unwrap(), -4.4675327889062714, max_relative = 1e-13);
    assert_relative_eq!(psi_k(ks(PI), 2.0).unwrap(), -0.085640081743412929, max_relative = 1e-12);
    assert_relative_eq!(
        psi_k_m(ks(2.0), 2, 1.7).unwrap(),
        -0.46826913503645637,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        psi_k_m(ks(1.0), 3, 0.25).unwrap(),
        1538.7821440091884,
        max_relative = 1e-12
    );
}

#[test]
fn nielsen_beta() {
    assert_relative_eq!(beta_k(ks(1.0), 1.0).unwrap(), LN_2, max_relative = 1e-15);
    assert_relative_eq!(beta_k(ks(2.0), 1.0).unwrap(), PI / 4.0, max_relative = 1e-14);
    assert_relative_eq!(beta_k(ks(0.5), 0.2).unwrap(), 4.0690163428942537, max_relative = 1e-13);
    assert_relative_eq!(
        beta_k(ks(3.0), 7.5).unwrap(),
        0.079154331153854429,
        max_relative = 1e-13
    );
}

#[test]
fn hadamard_values() {
    assert_relative_eq!(hadamard_k(ks(1.0), 1.5), 1.0073030462741353, max_relative = 1e-13);
    assert_relative_eq!(hadamard_k(ks(2.0), 3.3), 1.566193755810078, max_relative = 1e-12);
    assert_relative_eq!(hadamard_k(ks(1.0), -0.5), 0.48430448328550912, max_relative = 1e-13);
    assert_relative_eq!(hadamard_k(ks(0.5), -0.7), 1.0571360558166585, max_relative = 1e-12);
    let root = alpha0_solve(ks(1.0), 1e-12).unwrap().root;
    assert!((root - 1.5031760923).abs() < 1e-9);
}

#[test]
fn moment_integrals() {
    let cases = [
        (2.0, 3, -0.72586942510810751),
        (0.5, 1, -0.6327560617423227),
        (1.0, 2, -0.42142957913710422),
    ];
    for (k, m, want) in cases {
        let got = furdui_oracle(ks(k), m, 1e-13).unwrap().value;
        assert!((got - want).abs() < 1e-11, "I({k},{m}) = {got}, want {want}");
    }
}

#[test]
fn scalar_helpers() {
    assert_relative_eq!(zeta_int(3).unwrap(), 1.2020569031595943, max_relative = 1e-15);
    assert_relative_eq!(zeta_int(2).unwrap(), PI * PI / 6.0, max_relative = 1e-15);
    assert_relative_eq!(
        gauss_2f1(1.0, 1.0, 2.0, -1.0).unwrap().value,
        LN_2,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        gauss_2f1(0.5, 1.0, 1.5, -0.8).unwrap().value,
        0.81586032219254725,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        gauss_2f1_direct(2.0, 3.0, 4.0, 0.4, 1e-15).unwrap().value,
        2.1100977719383734,
        max_relative = 1e-13
    );
}
