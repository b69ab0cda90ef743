//! Closed-form interference patterns and photon-number variances.

use crate::error::{check_nonneg, check_unit, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FringeSign {
    Plus,
    Minus,
}

impl FringeSign {
    pub const fn factor(self) -> f64 {
        match self {
            FringeSign::Plus => 1.0,
            FringeSign::Minus => -1.0,
        }
    }
}

/// An interference pattern `N(φ) = a + sign·b·cos φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeModel {
    pub baseline: f64,
    pub amplitude: f64,
    pub sign: FringeSign,
}

impl FringeModel {
    pub const fn new(baseline: f64, amplitude: f64, sign: FringeSign) -> Self {
        Self {
            baseline,
            amplitude,
            sign,
        }
    }

    /// `N(φ)`. When `a ≥ b` the pattern is written as `(a − b) + 2b·cos²(φ/2)`
    /// (or `sin²` for the minus sign) so the dark fringe carries no cancellation.
    pub fn mean(&self, phase: f64) -> f64 {
        let (a, b) = (self.baseline, self.amplitude);
        if a >= b && b >= 0.0 {
            let half = match self.sign {
                FringeSign::Plus => libm::cos(0.5 * phase),
                FringeSign::Minus => libm::sin(0.5 * phase),
            };
            (a - b) + 2.0 * b * half * half
        } else {
            a + self.sign.factor() * b * libm::cos(phase)
        }
    }

    /// `∂N/∂φ`.
    pub fn slope(&self, phase: f64) -> f64 {
        -self.sign.factor() * self.amplitude * libm::sin(phase)
    }

    /// `∂²N/∂φ²`.
    pub fn curvature(&self, phase: f64) -> f64 {
        -self.sign.factor() * self.amplitude * libm::cos(phase)
    }

    /// `C = b/a`; zero for an empty pattern.
    pub fn contrast(&self) -> f64 {
        if self.baseline == 0.0 {
            0.0
        } else {
            self.amplitude / self.baseline
        }
    }
}

fn check_gains(v_a: f64, v_b: f64, t_s: f64, t_i: f64) -> Result<()> {
    check_nonneg("v_a", v_a)?;
    check_nonneg("v_b", v_b)?;
    check_unit("t_s", t_s)?;
    check_unit("t_i", t_i)?;
    Ok(())
}

/// Detected signal of the lossy Yurke interferometer.
pub fn yurke_fringe(v_a: f64, v_b: f64, t_s: f64, t_i: f64) -> Result<FringeModel> {
    check_gains(v_a, v_b, t_s, t_i)?;
    // Grouped so that lossless equal gain gives a == b bit for bit.
    let a = t_s * v_a * (1.0 + v_b) + v_b * (1.0 + t_i * v_a);
    let b = 2.0 * libm::sqrt(t_s * t_i) * libm::sqrt((v_a * (1.0 + v_a)) * (v_b * (1.0 + v_b)));
    Ok(FringeModel::new(a, b, FringeSign::Plus))
}

/// Equal-gain Yurke fringe, `V_A = V_B = n`.
pub fn yurke_fringe_equal(n: f64, t_s: f64, t_i: f64) -> Result<FringeModel> {
    yurke_fringe(n, n, t_s, t_i)
}

/// The two Mandel exits `(N_s, N_s')`, sharing baseline and amplitude.
pub fn mandel_fringe(v_a: f64, v_b: f64, t_s: f64, t_i: f64) -> Result<(FringeModel, FringeModel)> {
    check_gains(v_a, v_b, t_s, t_i)?;
    let a = 0.5 * (t_s * v_a + v_b + t_i * v_a * v_b);
    let b = libm::sqrt(t_s * t_i * v_a * v_b * (1.0 + v_a));
    Ok((
        FringeModel::new(a, b, FringeSign::Plus),
        FringeModel::new(a, b, FringeSign::Minus),
    ))
}

/// Mandel exit sum `N_+` (phase independent) and difference `N_−`.
pub fn mandel_sum_diff(
    v_a: f64,
    v_b: f64,
    t_s: f64,
    t_i: f64,
) -> Result<(FringeModel, FringeModel)> {
    let (exit, _) = mandel_fringe(v_a, v_b, t_s, t_i)?;
    Ok((
        FringeModel::new(2.0 * exit.baseline, 0.0, FringeSign::Plus),
        FringeModel::new(0.0, 2.0 * exit.amplitude, FringeSign::Plus),
    ))
}

/// Sum and difference of the lossless equal-gain hybrid exits at out-coupling `rho`.
pub fn hybrid_fringes(n: f64, rho: f64) -> Result<(FringeModel, FringeModel)> {
    check_nonneg("n", n)?;
    check_unit("rho", rho)?;
    let tau = 1.0 - rho;
    let sqrt_tau = libm::sqrt(tau);
    let sum = FringeModel::new(
        n * (n + 2.0 + n * tau),
        2.0 * n * (1.0 + n) * sqrt_tau,
        FringeSign::Plus,
    );
    let diff = FringeModel::new(
        2.0 * n * rho * libm::sqrt((n + 1.0) * (tau + tau * tau)) + n * tau * (n + (2.0 + n) * tau),
        2.0 * n * ((1.0 + n) * tau * sqrt_tau + rho * libm::sqrt((1.0 + n) * (1.0 + tau))),
        FringeSign::Plus,
    );
    Ok((sum, diff))
}

/// Thermal photon-number variance `N(1 + N)`.
pub fn thermal_variance(mean: f64) -> f64 {
    mean * (1.0 + mean)
}

/// `Var(N_−) = N_+ + N_−² + 2 V_A V_B T_s (1 − T_i)` for the Mandel exits.
pub fn diff_variance(n_plus: f64, n_minus: f64, v_a: f64, v_b: f64, t_s: f64, t_i: f64) -> f64 {
    n_plus + n_minus * n_minus + 2.0 * v_a * v_b * t_s * (1.0 - t_i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    #[test]
    fn yurke_lossless_unit_gain() {
        let f = yurke_fringe_equal(1.0, 1.0, 1.0).unwrap();
        assert_eq!((f.baseline, f.amplitude), (4.0, 4.0));
        assert!(f.mean(PI) < 1e-30);
        assert_relative_eq!(f.mean(0.0), 8.0);
    }

    #[test]
    fn yurke_lossy_unit_gain() {
        let f = yurke_fringe_equal(1.0, 0.8, 0.7).unwrap();
        assert_relative_eq!(f.baseline, 3.3, max_relative = 1e-15);
        assert_relative_eq!(f.amplitude, 2.993_325_909_419_153, max_relative = 1e-15);
        assert_relative_eq!(f.contrast(), 0.907_068_457_399_743_4, max_relative = 1e-14);
        assert_relative_eq!(f.mean(0.0), 6.293_325_909_419_153, max_relative = 1e-15);
    }

    #[test]
    fn yurke_needs_first_squeezer() {
        let f = yurke_fringe(0.0, 2.5, 0.6, 0.9).unwrap();
        assert_eq!((f.baseline, f.amplitude), (2.5, 0.0));
    }

    #[test]
    fn yurke_equal_gain_reduction() {
        let (n, ts, ti) = (3.7, 0.55, 0.85);
        let f = yurke_fringe_equal(n, ts, ti).unwrap();
        assert_relative_eq!(
            f.baseline,
            n * (1.0 + ts) + n * n * (ts + ti),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            f.amplitude,
            2.0 * n * (n + 1.0) * libm::sqrt(ts * ti),
            max_relative = 1e-14
        );
    }

    #[test]
    fn mandel_lossless_unit_gain() {
        let (plus, minus) = mandel_fringe(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(
            plus.mean(0.0),
            (3.0 + 2.0 * SQRT_2) / 2.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            minus.mean(0.0),
            (3.0 - 2.0 * SQRT_2) / 2.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(plus.contrast(), 2.0 * SQRT_2 / 3.0, max_relative = 1e-15);
        assert!(plus.contrast() < 1.0);
    }

    #[test]
    fn mandel_without_first_squeezer() {
        let (plus, _) = mandel_fringe(0.0, 4.0, 0.5, 0.5).unwrap();
        assert_eq!((plus.baseline, plus.amplitude), (2.0, 0.0));
    }

    #[test]
    fn mandel_sum_and_difference() {
        let (sum, diff) = mandel_sum_diff(10.0, 10.0, 0.8, 0.7).unwrap();
        assert_relative_eq!(sum.mean(1.3), 88.0, max_relative = 1e-15);
        assert_eq!(sum.amplitude, 0.0);
        assert_eq!(diff.baseline, 0.0);
        assert_relative_eq!(
            diff.amplitude,
            20.0 * libm::sqrt(11.0 * 0.56),
            max_relative = 1e-15
        );

        let n: f64 = 4.0;
        let (sum, diff) = mandel_sum_diff(n, n, 1.0, 1.0).unwrap();
        assert_relative_eq!(sum.baseline, n * (n + 2.0));
        assert!(diff.mean(FRAC_PI_2).abs() < 1e-12);

        let (_, diff) = mandel_sum_diff(3.0, 3.0, 0.9, 0.0).unwrap();
        assert_eq!(diff.amplitude, 0.0);
    }

    #[test]
    fn hybrid_endpoints() {
        let n: f64 = 6.0;
        let (_, diff) = hybrid_fringes(n, 1.0).unwrap();
        assert_eq!(diff.baseline, 0.0);
        assert_relative_eq!(
            diff.amplitude,
            2.0 * n * libm::sqrt(1.0 + n),
            max_relative = 1e-15
        );

        let (sum, diff) = hybrid_fringes(n, 0.0).unwrap();
        let yurke = 2.0 * n * (1.0 + n);
        assert_relative_eq!(diff.baseline, yurke);
        assert_relative_eq!(diff.amplitude, yurke);
        assert_relative_eq!(sum.baseline, yurke);
        assert_relative_eq!(sum.amplitude, yurke);
    }

    #[test]
    fn hybrid_half_mixing() {
        let (sum, diff) = hybrid_fringes(10.0, 0.5).unwrap();
        assert_relative_eq!(diff.baseline, 108.722_813_232_690_14, max_relative = 1e-14);
        assert_relative_eq!(diff.amplitude, 118.401_937_953_700_03, max_relative = 1e-14);
        assert_relative_eq!(sum.mean(0.0), 325.563_491_861_040_46, max_relative = 1e-14);
        assert!(hybrid_fringes(10.0, 1.2).is_err());
    }

    #[test]
    fn thermal_and_difference_variances() {
        assert_eq!(thermal_variance(0.0), 0.0);
        assert_eq!(thermal_variance(8.0), 72.0);
        assert_relative_eq!(
            thermal_variance(2.2071),
            2.2071 * 3.2071,
            max_relative = 1e-15
        );
        assert_relative_eq!(diff_variance(3.0, 0.0, 1.0, 1.0, 1.0, 1.0), 3.0);
        assert_eq!(diff_variance(5.0, 2.0, 3.0, 4.0, 0.5, 1.0), 9.0);
        assert_relative_eq!(
            diff_variance(88.0, 0.0, 10.0, 10.0, 0.8, 0.7),
            136.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(yurke_fringe(-1.0, 1.0, 0.5, 0.5).is_err());
        assert!(mandel_fringe(1.0, 1.0, 1.5, 0.5).is_err());
        assert!(hybrid_fringes(-2.0, 0.5).is_err());
    }

    #[test]
    fn stable_form_matches_plain_cosine() {
        let f = FringeModel::new(5.0, 3.0, FringeSign::Minus);
        for phi in [0.0, 0.4, 1.9, PI, 5.0] {
            assert_relative_eq!(
                f.mean(phi),
                5.0 - 3.0 * libm::cos(phi),
                max_relative = 1e-14
            );
        }
    }
}
