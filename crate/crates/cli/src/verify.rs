//! Seeded cross-checks of the closed forms against the Wick-contraction
//! moments, and of the optimal phase against a numeric search.

use std::f64::consts::PI;

use nlinterf_core::analytic::{
    diff_variance, hybrid_fringes, mandel_fringe, mandel_sum_diff, thermal_variance, yurke_fringe,
    yurke_fringe_equal, FringeModel, FringeSign,
};
use nlinterf_core::sensitivity::{
    fisher_series, fisher_thermal, sigma_min_thermal, sigma_thermal, thermal_variance_at,
};
use nlinterf_core::{
    diff_moments, hybrid_ports, mandel_ports, numeric_phi_min, port_mean, port_variance,
    yurke_ports, InterferometerSpec, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::sweep::PHASE_TOL;

pub const ORACLE_TOL: f64 = 1e-10;
pub const PHI_MIN_TOL: f64 = 1e-9;
pub const FISHER_TOL: f64 = 1e-10;
pub const SERIES_TOL: f64 = 1e-8;
/// Deviations are relative to `max(|x|, |y|, DEVIATION_FLOOR)`.
pub const DEVIATION_FLOOR: f64 = 1e-2;
const SERIES_TAIL: f64 = 1e-12;

pub fn deviation(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(DEVIATION_FLOOR)
}

/// The spec a check was evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledSpec {
    pub variant: &'static str,
    pub v_a: f64,
    pub v_b: f64,
    pub t_s: f64,
    pub t_i: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    pub phi: f64,
}

impl SampledSpec {
    fn json(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub class: &'static str,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Spec of the largest deviation.
    pub worst: Option<SampledSpec>,
}

impl CheckSummary {
    fn new(class: &'static str, tolerance: f64) -> Self {
        Self {
            class,
            samples: 0,
            max_deviation: 0.0,
            tolerance,
            passed: true,
            worst: None,
        }
    }

    fn record(&mut self, dev: f64, spec: SampledSpec) {
        self.samples += 1;
        // NaN counts as a failure.
        if !(dev <= self.max_deviation) {
            self.max_deviation = if dev.is_nan() { f64::INFINITY } else { dev };
            self.worst = Some(spec);
        }
        self.passed = self.max_deviation <= self.tolerance;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub count: usize,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckSummary> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn hard(class: &str, spec: &SampledSpec, e: nlinterf_core::Error) -> CliError {
    CliError::Verification(format!("{class}: {e} for spec {}", spec.json()))
}

struct Sampler(ChaCha8Rng);

impl Sampler {
    fn gain(&mut self) -> f64 {
        self.0.gen_range(0.0..=50.0)
    }
    fn transmittance(&mut self) -> f64 {
        self.0.gen_range(0.05..=1.0)
    }
    fn phase(&mut self) -> f64 {
        self.0.gen_range(0.0..2.0 * PI)
    }
    fn spec(&mut self, variant: &'static str) -> SampledSpec {
        SampledSpec {
            variant,
            v_a: self.gain(),
            v_b: self.gain(),
            t_s: self.transmittance(),
            t_i: self.transmittance(),
            rho: None,
            phi: self.phase(),
        }
    }
}

fn core_spec(
    s: &SampledSpec,
    variant: Variant,
) -> Result<InterferometerSpec, nlinterf_core::Error> {
    InterferometerSpec::with_phase(variant, s.v_a, s.v_b, s.t_s, s.t_i, s.phi)
}

/// Runs every check class on `count` specs drawn from a ChaCha stream seeded
/// with `seed`. Deviations beyond tolerance are reported, not raised; a
/// failing core call aborts with the offending spec.
pub fn run_verify(seed: u64, count: usize) -> Result<VerifyReport, CliError> {
    if count == 0 {
        return Err(CliError::Validation("verify count must be >= 1".into()));
    }
    let mut rng = Sampler(ChaCha8Rng::seed_from_u64(seed));

    let mut commutator = CheckSummary::new("commutator", ORACLE_TOL);
    let mut yurke_mean = CheckSummary::new("yurke-mean", ORACLE_TOL);
    let mut yurke_var = CheckSummary::new("yurke-variance", ORACLE_TOL);
    for _ in 0..count {
        let s = rng.spec("yurke");
        let port = core_spec(&s, Variant::Yurke)
            .and_then(|c| yurke_ports(&c))
            .map_err(|e| hard("yurke", &s, e))?;
        let fringe = yurke_fringe(s.v_a, s.v_b, s.t_s, s.t_i).map_err(|e| hard("yurke", &s, e))?;
        let mean = fringe.mean(s.phi);
        commutator.record((port.commutator() - 1.0).abs(), s);
        yurke_mean.record(deviation(port_mean(&port), mean), s);
        yurke_var.record(deviation(port_variance(&port), thermal_variance(mean)), s);
    }

    let mut exit_mean = CheckSummary::new("mandel-exit-mean", ORACLE_TOL);
    let mut exit_var = CheckSummary::new("mandel-exit-variance", ORACLE_TOL);
    let mut mandel_sum = CheckSummary::new("mandel-sum", ORACLE_TOL);
    let mut mandel_diff = CheckSummary::new("mandel-diff", ORACLE_TOL);
    let mut mandel_diff_var = CheckSummary::new("mandel-diff-variance", ORACLE_TOL);
    for _ in 0..count {
        let s = rng.spec("mandel");
        let (p, m) = core_spec(&s, Variant::Mandel)
            .and_then(|c| mandel_ports(&c))
            .map_err(|e| hard("mandel", &s, e))?;
        let (fp, fm) =
            mandel_fringe(s.v_a, s.v_b, s.t_s, s.t_i).map_err(|e| hard("mandel", &s, e))?;
        let (sum, diff) =
            mandel_sum_diff(s.v_a, s.v_b, s.t_s, s.t_i).map_err(|e| hard("mandel", &s, e))?;
        let report = diff_moments(&p, &m);
        commutator.record(
            (p.commutator() - 1.0)
                .abs()
                .max((m.commutator() - 1.0).abs()),
            s,
        );
        exit_mean.record(
            deviation(report.mean[0], fp.mean(s.phi))
                .max(deviation(report.mean[1], fm.mean(s.phi))),
            s,
        );
        exit_var.record(
            deviation(report.variance[0], thermal_variance(report.mean[0])).max(deviation(
                report.variance[1],
                thermal_variance(report.mean[1]),
            )),
            s,
        );
        let (n_plus, n_minus) = (sum.mean(s.phi), diff.mean(s.phi));
        mandel_sum.record(deviation(report.sum_mean, n_plus), s);
        mandel_diff.record(deviation(report.diff_mean, n_minus), s);
        let var = diff_variance(n_plus, n_minus, s.v_a, s.v_b, s.t_s, s.t_i);
        mandel_diff_var.record(deviation(report.diff_variance, var), s);
    }

    let mut hybrid_sum = CheckSummary::new("hybrid-sum", ORACLE_TOL);
    let mut hybrid_diff = CheckSummary::new("hybrid-diff", ORACLE_TOL);
    let mut hybrid_diff_var = CheckSummary::new("hybrid-diff-variance", ORACLE_TOL);
    for _ in 0..count {
        let n = rng.gain();
        let rho = rng.0.gen_range(0.0..=1.0);
        let phi = rng.phase();
        let s = SampledSpec {
            variant: "hybrid",
            v_a: n,
            v_b: n,
            t_s: 1.0,
            t_i: 1.0,
            rho: Some(rho),
            phi,
        };
        let (p, m) = InterferometerSpec::hybrid(n, rho, phi)
            .and_then(|c| hybrid_ports(&c))
            .map_err(|e| hard("hybrid", &s, e))?;
        let (sum, diff) = hybrid_fringes(n, rho).map_err(|e| hard("hybrid", &s, e))?;
        let report = diff_moments(&p, &m);
        commutator.record(
            (p.commutator() - 1.0)
                .abs()
                .max((m.commutator() - 1.0).abs()),
            s,
        );
        let (n_plus, n_minus) = (sum.mean(phi), diff.mean(phi));
        hybrid_sum.record(deviation(report.sum_mean, n_plus), s);
        hybrid_diff.record(deviation(report.diff_mean, n_minus), s);
        hybrid_diff_var.record(
            deviation(report.diff_variance, n_plus + n_minus * n_minus),
            s,
        );
    }

    let mut phi_min = CheckSummary::new("phi-min", PHI_MIN_TOL);
    let mut fisher = CheckSummary::new("fisher-identity", FISHER_TOL);
    for _ in 0..count {
        let n = 10f64.powf(rng.0.gen_range(-1.0..=3.0));
        let (t_s, t_i) = (rng.transmittance(), rng.transmittance());
        let phi = rng.0.gen_range(0.01..PI - 0.01);
        let s = SampledSpec {
            variant: "yurke",
            v_a: n,
            v_b: n,
            t_s,
            t_i,
            rho: None,
            phi,
        };
        let fringe = yurke_fringe_equal(n, t_s, t_i).map_err(|e| hard("phi-min", &s, e))?;
        let closed = sigma_min_thermal(&fringe).map_err(|e| hard("phi-min", &s, e))?;
        let (_, numeric) =
            numeric_phi_min(|p| thermal_variance_at(&fringe, p), (0.0, PI), PHASE_TOL)
                .map_err(|e| hard("phi-min", &s, e))?;
        phi_min.record(deviation(closed.variance, numeric), s);

        let sigma = sigma_thermal(&fringe, phi).map_err(|e| hard("fisher-identity", &s, e))?;
        let f = fisher_thermal(fringe.mean(phi), fringe.slope(phi))
            .map_err(|e| hard("fisher-identity", &s, e))?;
        fisher.record((f * sigma.variance - 1.0).abs(), s);
    }

    let mut series = CheckSummary::new("fisher-series", SERIES_TOL);
    for _ in 0..count {
        // Generic fringes with mean photon number up to 100.
        let a = rng.0.gen_range(0.01..=50.0);
        let b = a * rng.0.gen_range(0.0..=1.0);
        let phi = rng.0.gen_range(0.01..PI - 0.01);
        let s = SampledSpec {
            variant: "fringe",
            v_a: a,
            v_b: b,
            t_s: 1.0,
            t_i: 1.0,
            rho: None,
            phi,
        };
        let fringe = FringeModel::new(a, b, FringeSign::Plus);
        let closed = fisher_thermal(fringe.mean(phi), fringe.slope(phi))
            .map_err(|e| hard("fisher-series", &s, e))?;
        let summed =
            fisher_series(&fringe, phi, SERIES_TAIL).map_err(|e| hard("fisher-series", &s, e))?;
        series.record(deviation(summed, closed), s);
    }

    let checks = vec![
        commutator,
        yurke_mean,
        yurke_var,
        exit_mean,
        exit_var,
        mandel_sum,
        mandel_diff,
        mandel_diff_var,
        hybrid_sum,
        hybrid_diff,
        hybrid_diff_var,
        phi_min,
        fisher,
        series,
    ];
    Ok(VerifyReport {
        seed,
        count,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
