//! Phase uncertainty and classical Fisher information of intensity readouts.
//!
//! Every estimator here is Gaussian error propagation,
//! `σ² = Var(N)/(∂N/∂φ)²`. For a thermal single-port readout that is also the
//! inverse classical Fisher information of the photon-count distribution.

use core::f64::consts::PI;

use crate::analytic::{
    diff_variance, hybrid_fringes, mandel_fringe, mandel_sum_diff, thermal_variance,
    yurke_fringe_equal, FringeModel, FringeSign,
};
use crate::error::{check_positive, check_unit, Error, Result};

/// `|sin φ|` at or below this is treated as a vanishing readout slope.
pub const SLOPE_TOL: f64 = 1e-12;
/// Largest excursion of the optimal-phase cosine outside `[-1, 1]` that is clamped.
pub const BRANCH_TOL: f64 = 1e-9;
/// Hard cap on the number of terms in [`fisher_series`].
pub const SERIES_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityResult {
    /// Working point, radians.
    pub phase: f64,
    /// `σ²`, squared radians.
    pub variance: f64,
    /// `F_c = 1/σ²`.
    pub fisher: f64,
    /// `F_c/n`, when the photon number of the probe is known.
    pub normalized_fisher: Option<f64>,
}

impl SensitivityResult {
    fn new(phase: f64, variance: f64) -> Self {
        Self {
            phase,
            variance,
            fisher: 1.0 / variance,
            normalized_fisher: None,
        }
    }

    pub fn with_photons(mut self, n: f64) -> Self {
        self.normalized_fisher = Some(self.fisher / n);
        self
    }
}

/// Coefficients of `σ²_min ≈ c₀ + c₁/n + c₂/n²` for the lossy Yurke
/// interferometer at large gain.
///
/// `c₂` is the lossless (Heisenberg) coefficient form. The limits `n → ∞` and
/// `T → 1` do not commute there: with any loss the exact `1/n²` coefficient is
/// larger by `1/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighGainExpansion {
    pub constant_term: f64,
    pub inverse_n_term: f64,
    pub inverse_n2_term: f64,
}

impl HighGainExpansion {
    pub fn evaluate(&self, n: f64) -> f64 {
        self.constant_term + self.inverse_n_term / n + self.inverse_n2_term / (n * n)
    }
}

fn check_slope(amplitude: f64, phase: f64) -> Result<()> {
    if amplitude == 0.0 {
        return Err(Error::NoFringe);
    }
    if libm::fabs(libm::sin(phase)) <= SLOPE_TOL {
        return Err(Error::DegenerateSlope { phase });
    }
    Ok(())
}

/// `N(1+N)/(∂N/∂φ)²` without slope checks; `+∞` or NaN at zero slope.
pub fn thermal_variance_at(fringe: &FringeModel, phase: f64) -> f64 {
    let slope = fringe.slope(phase);
    thermal_variance(fringe.mean(phase)) / (slope * slope)
}

/// Single-port thermal readout uncertainty at `phase`.
///
/// Equal to `[a(1+a) + b(1+2a)cos φ + b²cos²φ]/(b² sin²φ)`, evaluated as
/// `N(1+N)/(∂N/∂φ)²`.
pub fn sigma_thermal(fringe: &FringeModel, phase: f64) -> Result<SensitivityResult> {
    check_slope(fringe.amplitude, phase)?;
    Ok(SensitivityResult::new(
        phase,
        thermal_variance_at(fringe, phase),
    ))
}

/// Optimal working point of a single-port thermal readout, in `(0, π]` for a
/// plus-sign fringe (mirrored to `π − φ` for the minus sign).
///
/// `cos φ_min = −K + √(K² − 1)` with `K = [a(1+a) + b²]/[b(1+2a)]`. Uses
/// `K − 1 = (a−b)(a−b+1)/[b(1+2a)]` and the reciprocal root so the lossless
/// point `a = b` is exact.
pub fn phi_min_thermal(fringe: &FringeModel) -> Result<f64> {
    let (a, b) = (fringe.baseline, fringe.amplitude);
    if !(b > 0.0) {
        return Err(Error::NoFringe);
    }
    let gap = a - b;
    let denom = b * (1.0 + 2.0 * a);
    let k_minus_1 = gap * (gap + 1.0) / denom;
    let k = 1.0 + k_minus_1;
    let k_sq_minus_1 = k_minus_1 * (k + 1.0);

    let root = if k_sq_minus_1 >= 0.0 {
        libm::sqrt(k_sq_minus_1)
    } else {
        // Cosine argument leaves [-1, 1]; −K itself is the pre-clamp argument.
        if k < 1.0 - BRANCH_TOL {
            return Err(Error::InvalidBranch { argument: -k });
        }
        0.0
    };
    // cos φ = −1/(K + root); 1 ± cos φ written without cancellation.
    let s = k.max(1.0) + root;
    let one_plus_cos = (k_minus_1.max(0.0) + root) / s;
    let one_minus_cos = (s + 1.0) / s;
    let phi = 2.0 * libm::atan2(libm::sqrt(one_minus_cos), libm::sqrt(one_plus_cos));
    Ok(match fringe.sign {
        FringeSign::Plus => phi,
        FringeSign::Minus => PI - phi,
    })
}

/// Minimum of [`sigma_thermal`] over the phase:
/// `σ²_min = [a(1+a) − b²]/(2b²) + √((a²−b²)((1+a)²−b²))/(2b²)`.
pub fn sigma_min_thermal(fringe: &FringeModel) -> Result<SensitivityResult> {
    let (a, b) = (fringe.baseline, fringe.amplitude);
    if !(b > 0.0) {
        return Err(Error::NoFringe);
    }
    let gap = a - b;
    if gap < -1e-12 * b.max(1.0) {
        return Err(Error::Domain("sigma_min_thermal requires a >= b"));
    }
    let gap = gap.max(0.0);
    let two_b2 = 2.0 * b * b;
    let first = (gap * (a + b) + a) / two_b2;
    let root = libm::sqrt(gap * (a + b) * (1.0 + gap) * (1.0 + a + b)) / two_b2;
    let phase = phi_min_thermal(fringe)?;
    Ok(SensitivityResult::new(phase, first + root))
}

/// High-gain expansion of the lossy Yurke minimum.
pub fn yurke_highgain(t_s: f64, t_i: f64) -> Result<HighGainExpansion> {
    check_positive("t_s", t_s)?;
    check_positive("t_i", t_i)?;
    check_unit("t_s", t_s)?;
    check_unit("t_i", t_i)?;
    let denom = 4.0 * t_s * t_i;
    Ok(HighGainExpansion {
        constant_term: (t_s - t_i) * (t_s - t_i) / denom,
        inverse_n_term: (t_s + t_i) * (1.0 - t_i) / (2.0 * t_s * t_i),
        inverse_n2_term: (1.0 - (3.0 * t_i + t_s) * (1.0 - t_i)) / denom,
    })
}

fn check_sensing(n: f64, t_s: f64, t_i: f64) -> Result<()> {
    check_positive("n", n)?;
    check_positive("t_s", t_s)?;
    check_positive("t_i", t_i)?;
    check_unit("t_s", t_s)?;
    check_unit("t_i", t_i)?;
    Ok(())
}

/// Optimal lossy Yurke uncertainty at equal gain `n`.
pub fn sigma_yurke_min(n: f64, t_s: f64, t_i: f64) -> Result<SensitivityResult> {
    check_sensing(n, t_s, t_i)?;
    Ok(sigma_min_thermal(&yurke_fringe_equal(n, t_s, t_i)?)?.with_photons(n))
}

/// Yurke uncertainty at a fixed phase, equal gain `n`.
pub fn sigma_yurke(n: f64, t_s: f64, t_i: f64, phase: f64) -> Result<SensitivityResult> {
    check_sensing(n, t_s, t_i)?;
    Ok(sigma_thermal(&yurke_fringe_equal(n, t_s, t_i)?, phase)?.with_photons(n))
}

/// Optimal single-exit Mandel uncertainty.
///
/// The lossless case uses
/// `(1/4n)(n+2)/(n+1) + [n² + √(4(n+1)² + n⁴)]/[8(n+1)]`; lossy cases
/// minimise the thermal readout of the plus exit.
pub fn sigma_sm_min(n: f64, t_s: f64, t_i: f64) -> Result<SensitivityResult> {
    check_sensing(n, t_s, t_i)?;
    let (exit, _) = mandel_fringe(n, n, t_s, t_i)?;
    if t_s == 1.0 && t_i == 1.0 {
        let variance = (n + 2.0) / (4.0 * n * (n + 1.0))
            + (n * n + libm::sqrt(4.0 * (n + 1.0) * (n + 1.0) + n * n * n * n)) / (8.0 * (n + 1.0));
        let phase = phi_min_thermal(&exit)?;
        return Ok(SensitivityResult::new(phase, variance).with_photons(n));
    }
    Ok(sigma_min_thermal(&exit)?.with_photons(n))
}

/// Large-gain limit `T_i n/(4 T_s)` of [`sigma_sm_min`].
pub fn sm_highgain_limit(n: f64, t_s: f64, t_i: f64) -> f64 {
    t_i * n / (4.0 * t_s)
}

/// Differential Mandel readout `N_− = N_s − N_s'` at `phase`.
pub fn sigma_diff(n: f64, t_s: f64, t_i: f64, phase: f64) -> Result<SensitivityResult> {
    check_sensing(n, t_s, t_i)?;
    let (sum, diff) = mandel_sum_diff(n, n, t_s, t_i)?;
    check_slope(diff.amplitude, phase)?;
    let slope = diff.slope(phase);
    let variance = diff_variance(sum.mean(phase), diff.mean(phase), n, n, t_s, t_i);
    Ok(SensitivityResult::new(phase, variance / (slope * slope)).with_photons(n))
}

/// Closed form of [`sigma_diff`] at mid fringe,
/// `[1 + T_s + n(T_i + 2T_s − 2T_iT_s)] / [4 T_i T_s n (n+1)]`.
pub fn sigma_diff_mid(n: f64, t_s: f64, t_i: f64) -> Result<SensitivityResult> {
    check_sensing(n, t_s, t_i)?;
    let variance =
        (1.0 + t_s + n * (t_i + 2.0 * t_s - 2.0 * t_i * t_s)) / (4.0 * t_i * t_s * n * (n + 1.0));
    Ok(SensitivityResult::new(PI / 2.0, variance).with_photons(n))
}

/// `n·σ²_−|π/2` as `n → ∞`: `(2/T_i + 1/T_s − 2)/4`.
pub fn diff_highgain_coefficient(t_s: f64, t_i: f64) -> f64 {
    (2.0 / t_i + 1.0 / t_s - 2.0) / 4.0
}

/// `(N_+ + N_−²)/(∂N_−/∂φ)²` without slope checks.
pub fn hybrid_variance_at(sum: &FringeModel, diff: &FringeModel, phase: f64) -> f64 {
    let slope = diff.slope(phase);
    let n_minus = diff.mean(phase);
    (sum.mean(phase) + n_minus * n_minus) / (slope * slope)
}

/// Differential readout of the lossless hybrid at out-coupling `rho`.
pub fn sigma_hybrid(n: f64, rho: f64, phase: f64) -> Result<SensitivityResult> {
    check_positive("n", n)?;
    let (sum, diff) = hybrid_fringes(n, rho)?;
    check_slope(diff.amplitude, phase)?;
    Ok(SensitivityResult::new(phase, hybrid_variance_at(&sum, &diff, phase)).with_photons(n))
}

/// `F = (∂N/∂φ)²/[N(1+N)]` for thermal counts.
pub fn fisher_thermal(mean: f64, slope: f64) -> Result<f64> {
    if !(mean > 0.0) {
        return Err(Error::ZeroMean);
    }
    Ok(slope * slope / thermal_variance(mean))
}

/// Classical Fisher information of thermal counts summed term by term,
/// `F = −Σ_m p_m ∂²ln p_m/∂φ²` with `p_m = N^m/(1+N)^{m+1}`.
///
/// Stops once both the remaining probability mass and the remaining first
/// moment (scaled by `max(N, 1)`) fall below `truncation_tail`.
pub fn fisher_series(fringe: &FringeModel, phase: f64, truncation_tail: f64) -> Result<f64> {
    if !(truncation_tail > 0.0 && truncation_tail <= 1e-6) {
        return Err(Error::OutOfRange {
            name: "truncation_tail",
            value: truncation_tail,
        });
    }
    let mean = fringe.mean(phase);
    if !(mean > 0.0) {
        return Err(Error::ZeroMean);
    }
    let d1 = fringe.slope(phase);
    let d2 = fringe.curvature(phase);
    let ratio = mean / (1.0 + mean);
    let inv_1p = 1.0 / (1.0 + mean);
    let inv_n = 1.0 / mean;
    let scale = mean.max(1.0);

    let mut p = inv_1p;
    let mut tail = ratio; // Σ_{k>m} p_k = r^{m+1}
    let mut acc = 0.0;
    let mut m: u64 = 0;
    loop {
        let mf = m as f64;
        let curvature_term = ((1.0 + mf) * inv_1p * inv_1p - mf * inv_n * inv_n) * d1 * d1;
        let slope_term = (mf * inv_n - (1.0 + mf) * inv_1p) * d2;
        acc += p * (curvature_term + slope_term);

        let weighted_tail = tail * (mf + 1.0 + mean) / scale;
        if tail < truncation_tail && weighted_tail < truncation_tail {
            break;
        }
        m += 1;
        if m >= SERIES_CAP {
            let required = (libm::log(truncation_tail) / libm::log(ratio)) as u64;
            return Err(Error::TruncationFailure {
                required: required.max(SERIES_CAP),
                cap: SERIES_CAP,
            });
        }
        p *= ratio;
        tail *= ratio;
    }
    Ok(-acc)
}
