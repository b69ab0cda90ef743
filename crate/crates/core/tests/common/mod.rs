#![allow(dead_code)]

use nlinterf_core::{InterferometerSpec, Variant};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Runner with a fixed ChaCha stream, so "N random specs" is the same N every run.
pub fn seeded_runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Relative agreement `rel`, or absolute `abs·max(1, scale)` when both sides sit near zero.
pub fn close(x: f64, y: f64, rel: f64, abs: f64, scale: f64) -> bool {
    let d = (x - y).abs();
    d <= rel * x.abs().max(y.abs()) || d <= abs * scale.max(1.0)
}

pub fn gain() -> impl Strategy<Value = f64> {
    0.0..=50.0f64
}

pub fn transmittance() -> impl Strategy<Value = f64> {
    0.05..=1.0f64
}

pub fn phase() -> impl Strategy<Value = f64> {
    0.0..(2.0 * std::f64::consts::PI)
}

/// `(v_a, v_b, t_s, t_i, φ)`.
pub fn spec_params() -> impl Strategy<Value = (f64, f64, f64, f64, f64)> {
    (gain(), gain(), transmittance(), transmittance(), phase())
}

pub fn spec(variant: Variant, p: (f64, f64, f64, f64, f64)) -> InterferometerSpec {
    InterferometerSpec::with_phase(variant, p.0, p.1, p.2, p.3, p.4).unwrap()
}
