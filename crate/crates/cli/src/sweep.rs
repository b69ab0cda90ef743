//! Scenario grids. Points are evaluated in parallel; records come back in
//! grid order.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Display;

use nlinterf_core::analytic::{
    diff_variance, hybrid_fringes, mandel_fringe, mandel_sum_diff, thermal_variance, yurke_fringe,
    yurke_fringe_equal, FringeModel,
};
use nlinterf_core::sensitivity::{
    fisher_thermal, hybrid_variance_at, sigma_diff_mid, sigma_hybrid, sigma_min_thermal,
    sigma_thermal, sigma_yurke, sigma_yurke_min, yurke_highgain, SLOPE_TOL,
};
use nlinterf_core::{numeric_phi_min, Error};
use rayon::prelude::*;

use crate::config::{Param, Resolved, Scenario, SweepConfig, VariantName};
use crate::error::CliError;
use crate::record::SweepRecord;

/// Phase resolution of numeric minima.
pub const PHASE_TOL: f64 = 1e-10;

/// Errors that mark a divergent grid point instead of aborting the sweep.
fn divergent(e: &Error) -> bool {
    matches!(
        e,
        Error::DegenerateSlope { .. } | Error::NoFringe | Error::ZeroMean | Error::NoMinimum
    )
}

fn invalid(context: impl Display, e: Error) -> CliError {
    CliError::Validation(format!("{context}: {e}"))
}

/// Evaluates `f` on every point in parallel and concatenates the rows in
/// point order. The first failing point (in grid order) wins.
fn evaluate<P, F>(points: Vec<P>, f: F) -> Result<Vec<SweepRecord>, CliError>
where
    P: Send + Sync,
    F: Fn(&P) -> Result<Vec<SweepRecord>, CliError> + Send + Sync,
{
    let rows: Vec<Result<Vec<SweepRecord>, CliError>> = points.par_iter().map(f).collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

fn cartesian(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect()
    })
}

pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, CliError> {
    let grid = config.resolved()?;
    match config.scenario {
        Scenario::HybridMap => hybrid_map(&grid),
        Scenario::FisherSurface => fisher_surface(&grid),
        Scenario::FisherVsN => fisher_vs_n(&grid),
        Scenario::Scaling => scaling(&grid),
        Scenario::Compare => compare(&grid),
        Scenario::Custom => points(config, Detail::Full, "custom"),
    }
}

/// Minimum over `φ ∈ (0, π]` of the hybrid differential readout, `(φ, σ²)`.
///
/// At `ϱ = 0` the readout is thermal and the closed form applies.
pub fn hybrid_minimum(n: f64, rho: f64) -> Result<(f64, f64), Error> {
    let (sum, diff) = hybrid_fringes(n, rho)?;
    if rho == 0.0 {
        let r = sigma_min_thermal(&diff)?;
        return Ok((r.phase, r.variance));
    }
    numeric_phi_min(|p| hybrid_variance_at(&sum, &diff, p), (0.0, PI), PHASE_TOL)
}

fn hybrid_map(grid: &Resolved) -> Result<Vec<SweepRecord>, CliError> {
    let scenario = Scenario::HybridMap;
    let ns = grid.require(Param::N, scenario)?;
    let rhos = grid.require(Param::Rho, scenario)?;
    let phis = grid.require(Param::Phi, scenario)?;

    let mut rows = evaluate(cartesian(&[ns.clone(), rhos.clone(), phis]), |p| {
        let (n, rho, phi) = (p[0], p[1], p[2]);
        let (sum, diff) = hybrid_fringes(n, rho).map_err(|e| invalid("hybrid-map", e))?;
        let mut r = SweepRecord::new("hybrid-map");
        (r.n, r.rho, r.phi) = (Some(n), Some(rho), Some(phi));
        let n_minus = diff.mean(phi);
        r.n_plus = Some(sum.mean(phi));
        r.n_minus = Some(n_minus);
        r.variance = Some(sum.mean(phi) + n_minus * n_minus);
        r.contrast = Some(diff.contrast());
        match sigma_hybrid(n, rho, phi) {
            Ok(s) => r.sigma2 = r.finite(n * s.variance),
            Err(e) if divergent(&e) => r.sentinel = true,
            Err(e) => return Err(invalid(format_args!("hybrid-map n={n} rho={rho}"), e)),
        }
        Ok(vec![r])
    })?;

    rows.extend(evaluate(cartesian(&[ns, rhos]), |p| {
        let (n, rho) = (p[0], p[1]);
        let mut r = SweepRecord::new("hybrid-map-margin");
        (r.n, r.rho) = (Some(n), Some(rho));
        match hybrid_minimum(n, rho) {
            Ok((phase, variance)) => {
                r.phi_min = Some(phase);
                r.sigma2_min = r.finite(n * variance);
                r.fisher = r.finite(1.0 / variance);
                r.fisher_norm = r.finite(1.0 / (n * variance));
            }
            Err(e) if divergent(&e) => r.sentinel = true,
            Err(e) => {
                return Err(invalid(
                    format_args!("hybrid-map margin n={n} rho={rho}"),
                    e,
                ))
            }
        }
        Ok(vec![r])
    })?);
    Ok(rows)
}

/// `(t_s, t_i, n)` grid shared by the lossy Yurke scenarios.
fn yurke_grid(grid: &Resolved, scenario: Scenario) -> Result<Vec<Vec<f64>>, CliError> {
    Ok(cartesian(&[
        grid.require(Param::TS, scenario)?,
        grid.require(Param::TI, scenario)?,
        grid.require(Param::N, scenario)?,
    ]))
}

fn yurke_optimum(r: &mut SweepRecord, n: f64, t_s: f64, t_i: f64) -> Result<(), CliError> {
    let context = || format!("n={n} t_s={t_s} t_i={t_i}");
    match sigma_yurke_min(n, t_s, t_i) {
        Ok(s) => {
            r.phi_min = Some(s.phase);
            r.sigma2_min = r.finite(s.variance);
            r.fisher = r.finite(s.fisher);
            r.fisher_norm = s.normalized_fisher.and_then(|f| r.finite(f));
        }
        Err(e) if divergent(&e) => r.sentinel = true,
        Err(e) => return Err(invalid(context(), e)),
    }
    let fringe = yurke_fringe_equal(n, t_s, t_i).map_err(|e| invalid(context(), e))?;
    r.contrast = Some(fringe.contrast());
    Ok(())
}

fn fisher_surface(grid: &Resolved) -> Result<Vec<SweepRecord>, CliError> {
    let scenario = Scenario::FisherSurface;
    // n outer, t_i inner, matching the (n, T_i) surface.
    let points = cartesian(&[
        grid.require(Param::TS, scenario)?,
        grid.require(Param::N, scenario)?,
        grid.require(Param::TI, scenario)?,
    ]);
    evaluate(points, |p| {
        let (t_s, n, t_i) = (p[0], p[1], p[2]);
        let mut r = SweepRecord::new("fisher-surface");
        (r.n, r.t_s, r.t_i) = (Some(n), Some(t_s), Some(t_i));
        yurke_optimum(&mut r, n, t_s, t_i)?;
        Ok(vec![r])
    })
}

fn fisher_vs_n(grid: &Resolved) -> Result<Vec<SweepRecord>, CliError> {
    let scenario = Scenario::FisherVsN;
    let phis = grid.require(Param::Phi, scenario)?;
    evaluate(yurke_grid(grid, scenario)?, |p| {
        let (t_s, t_i, n) = (p[0], p[1], p[2]);
        let base = || {
            let mut r = SweepRecord::new("fisher-vs-n");
            (r.n, r.t_s, r.t_i) = (Some(n), Some(t_s), Some(t_i));
            r
        };
        let mut optimum = base();
        yurke_optimum(&mut optimum, n, t_s, t_i)?;
        let mut rows = vec![optimum];
        for &phi in &phis {
            let mut r = base();
            r.phi = Some(phi);
            match sigma_yurke(n, t_s, t_i, phi) {
                Ok(s) => {
                    r.sigma2 = r.finite(s.variance);
                    r.fisher = r.finite(s.fisher);
                    r.fisher_norm = s.normalized_fisher.and_then(|f| r.finite(f));
                }
                Err(e) if divergent(&e) => r.sentinel = true,
                Err(e) => return Err(invalid(format_args!("fisher-vs-n n={n} phi={phi}"), e)),
            }
            rows.push(r);
        }
        Ok(rows)
    })
}

fn scaling(grid: &Resolved) -> Result<Vec<SweepRecord>, CliError> {
    evaluate(yurke_grid(grid, Scenario::Scaling)?, |p| {
        let (t_s, t_i, n) = (p[0], p[1], p[2]);
        let base = |tag| {
            let mut r = SweepRecord::new(tag);
            (r.n, r.t_s, r.t_i) = (Some(n), Some(t_s), Some(t_i));
            r
        };
        let mut exact = base("scaling");
        yurke_optimum(&mut exact, n, t_s, t_i)?;
        let mut rows = vec![exact];

        let terms = yurke_highgain(t_s, t_i).map_err(|e| invalid("scaling", e))?;
        for (tag, value) in [
            ("scaling-floor", terms.constant_term),
            ("scaling-shot-noise", terms.inverse_n_term / n),
            ("scaling-heisenberg", terms.inverse_n2_term / (n * n)),
        ] {
            // A vanishing term has no place on a log axis.
            if value > 0.0 {
                let mut r = base(tag);
                r.sigma2 = r.finite(value);
                rows.push(r);
            }
        }
        Ok(rows)
    })
}

fn compare(grid: &Resolved) -> Result<Vec<SweepRecord>, CliError> {
    evaluate(yurke_grid(grid, Scenario::Compare)?, |p| {
        let (t_s, t_i, n) = (p[0], p[1], p[2]);
        let mut r = SweepRecord::new("compare");
        (r.n, r.t_s, r.t_i, r.phi) = (Some(n), Some(t_s), Some(t_i), Some(FRAC_PI_2));
        yurke_optimum(&mut r, n, t_s, t_i)?;
        (r.fisher, r.fisher_norm) = (None, None);
        let diff =
            sigma_diff_mid(n, t_s, t_i).map_err(|e| invalid(format_args!("compare n={n}"), e))?;
        r.sigma2 = r.finite(diff.variance);
        Ok(vec![r])
    })
}

/// What a point evaluation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detail {
    /// Photon numbers, variances and contrast.
    Fringe,
    /// Fringe plus phase uncertainty, optimum and Fisher information.
    Full,
}

#[derive(Debug, Clone, Copy)]
struct Point {
    n: Option<f64>,
    v_a: f64,
    v_b: f64,
    t_s: f64,
    t_i: f64,
    rho: f64,
    phi: f64,
}

/// Cartesian grid over every configured parameter of a `custom` config, in
/// [`Param::ALL`] order. `v_a`/`v_b` default to `n`.
pub fn points(
    config: &SweepConfig,
    detail: Detail,
    tag: &'static str,
) -> Result<Vec<SweepRecord>, CliError> {
    let grid = config.resolved()?;
    let variant = config.variant.unwrap_or(VariantName::Yurke);
    let axes: Vec<(Param, Vec<f64>)> = Param::ALL
        .iter()
        .filter_map(|&p| grid.values(p).map(|v| (p, v)))
        .collect();
    let need = |p: Param| {
        if axes.iter().any(|(q, _)| *q == p) {
            Ok(())
        } else {
            Err(CliError::Validation(format!(
                "{tag}: parameter {p} must be given"
            )))
        }
    };
    need(Param::Phi)?;
    let has = |p: Param| axes.iter().any(|(q, _)| *q == p);
    if !has(Param::N) && !(has(Param::VA) && has(Param::VB)) {
        return Err(CliError::Validation(format!(
            "{tag}: give n, or both v_a and v_b"
        )));
    }

    let values: Vec<Vec<f64>> = axes.iter().map(|(_, v)| v.clone()).collect();
    let pts: Vec<Point> = cartesian(&values)
        .into_iter()
        .map(|coords| {
            let get = |p: Param| axes.iter().position(|(q, _)| *q == p).map(|k| coords[k]);
            let n = get(Param::N);
            Point {
                n,
                v_a: get(Param::VA).or(n).unwrap_or_default(),
                v_b: get(Param::VB).or(n).unwrap_or_default(),
                t_s: get(Param::TS).unwrap_or(1.0),
                t_i: get(Param::TI).unwrap_or(1.0),
                rho: get(Param::Rho).unwrap_or(0.0),
                phi: get(Param::Phi).unwrap_or_default(),
            }
        })
        .collect();

    evaluate(pts, |p| {
        let mut r = SweepRecord::new(tag);
        r.n = p.n.or((p.v_a == p.v_b).then_some(p.v_a));
        (r.v_a, r.v_b, r.t_s, r.t_i, r.phi) = (
            Some(p.v_a),
            Some(p.v_b),
            Some(p.t_s),
            Some(p.t_i),
            Some(p.phi),
        );
        let context = format!("{tag} {p:?}");
        let result = match variant {
            VariantName::Yurke => yurke_point(&mut r, *p, detail),
            VariantName::Mandel => mandel_point(&mut r, *p, detail),
            VariantName::Hybrid => {
                r.rho = Some(p.rho);
                hybrid_point(&mut r, *p, detail)
            }
        };
        result.map_err(|e| match e {
            PointError::Core(e) => invalid(context, e),
            PointError::Config(msg) => CliError::Validation(format!("{tag}: {msg}")),
        })?;
        Ok(vec![r])
    })
}

enum PointError {
    Core(Error),
    Config(&'static str),
}

impl From<Error> for PointError {
    fn from(e: Error) -> Self {
        PointError::Core(e)
    }
}

fn fisher_columns(r: &mut SweepRecord, mean: f64, slope: f64) {
    if let Ok(f) = fisher_thermal(mean, slope) {
        r.fisher = r.finite(f);
        r.fisher_norm = r.n.filter(|&n| n > 0.0).and_then(|n| r.finite(f / n));
    }
}

fn yurke_point(r: &mut SweepRecord, p: Point, detail: Detail) -> Result<(), PointError> {
    let f = yurke_fringe(p.v_a, p.v_b, p.t_s, p.t_i)?;
    let mean = f.mean(p.phi);
    r.n_s = Some(mean);
    r.variance = Some(thermal_variance(mean));
    r.contrast = Some(f.contrast());
    if detail == Detail::Fringe {
        return Ok(());
    }
    match sigma_thermal(&f, p.phi) {
        Ok(s) => r.sigma2 = r.finite(s.variance),
        Err(e) if divergent(&e) => r.sentinel = true,
        Err(e) => return Err(e.into()),
    }
    fisher_columns(r, mean, f.slope(p.phi));
    optimum(r, sigma_min_thermal(&f).map(|s| (s.phase, s.variance)))
}

fn optimum(r: &mut SweepRecord, result: Result<(f64, f64), Error>) -> Result<(), PointError> {
    match result {
        Ok((phase, variance)) => {
            r.phi_min = Some(phase);
            r.sigma2_min = r.finite(variance);
            Ok(())
        }
        Err(e) if divergent(&e) => {
            r.sentinel = true;
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

/// `σ² = Var(N_−)/(∂N_−/∂φ)²` for a pair readout; `None` at zero slope.
fn pair_sigma(diff: &FringeModel, variance: f64, phi: f64) -> Option<f64> {
    (diff.amplitude != 0.0 && phi.sin().abs() > SLOPE_TOL).then(|| {
        let slope = diff.slope(phi);
        variance / (slope * slope)
    })
}

fn mandel_point(r: &mut SweepRecord, p: Point, detail: Detail) -> Result<(), PointError> {
    let (exit, _) = mandel_fringe(p.v_a, p.v_b, p.t_s, p.t_i)?;
    let (sum, diff) = mandel_sum_diff(p.v_a, p.v_b, p.t_s, p.t_i)?;
    let (n_plus, n_minus) = (sum.mean(p.phi), diff.mean(p.phi));
    let variance = diff_variance(n_plus, n_minus, p.v_a, p.v_b, p.t_s, p.t_i);
    r.n_s = Some(exit.mean(p.phi));
    (r.n_plus, r.n_minus, r.variance) = (Some(n_plus), Some(n_minus), Some(variance));
    r.contrast = Some(exit.contrast());
    if detail == Detail::Fringe {
        return Ok(());
    }
    pair_columns(r, &diff, variance, p.phi);
    // Var(N_−) is smallest and the slope largest at mid fringe.
    let mid = diff_variance(sum.baseline, 0.0, p.v_a, p.v_b, p.t_s, p.t_i);
    optimum(
        r,
        pair_sigma(&diff, mid, FRAC_PI_2)
            .map(|s| (FRAC_PI_2, s))
            .ok_or(Error::NoFringe),
    )
}

fn pair_columns(r: &mut SweepRecord, diff: &FringeModel, variance: f64, phi: f64) {
    match pair_sigma(diff, variance, phi) {
        Some(s) => r.sigma2 = r.finite(s),
        None => r.sentinel = true,
    }
    if variance > 0.0 {
        let slope = diff.slope(phi);
        let f = slope * slope / variance;
        r.fisher = r.finite(f);
        r.fisher_norm = r.n.filter(|&n| n > 0.0).and_then(|n| r.finite(f / n));
    }
}

fn hybrid_point(r: &mut SweepRecord, p: Point, detail: Detail) -> Result<(), PointError> {
    if p.v_a != p.v_b {
        return Err(PointError::Config("the hybrid model needs equal gains"));
    }
    if p.t_s != 1.0 || p.t_i != 1.0 {
        return Err(PointError::Config(
            "the hybrid model is lossless; t_s and t_i must be 1",
        ));
    }
    let (sum, diff) = hybrid_fringes(p.v_a, p.rho)?;
    let (n_plus, n_minus) = (sum.mean(p.phi), diff.mean(p.phi));
    let variance = n_plus + n_minus * n_minus;
    (r.n_plus, r.n_minus, r.variance) = (Some(n_plus), Some(n_minus), Some(variance));
    r.contrast = Some(diff.contrast());
    if detail == Detail::Fringe {
        return Ok(());
    }
    pair_columns(r, &diff, variance, p.phi);
    optimum(r, hybrid_minimum(p.v_a, p.rho))
}
