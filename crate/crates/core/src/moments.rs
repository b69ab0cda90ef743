//! Photon-number moments of output ports on vacuum input, by Wick contraction.
//!
//! Only the port coefficients enter here. For `b = Σ A_k a_k + B_k a_k†` on
//! the vacuum the non-vanishing pair contractions are
//!
//! * normal: `⟨b_p† b_q⟩ = Σ_k B̄_pk B_qk`
//! * anomalous: `⟨b_p b_q⟩ = Σ_k A_pk B_qk`
//!
//! and every fourth moment factorises into products of these.

use num_complex::Complex64;

use crate::algebra::{Mode, PortCoefficients};

/// `⟨b_p† b_q⟩`.
pub fn normal_correlation(p: &PortCoefficients, q: &PortCoefficients) -> Complex64 {
    Mode::ALL.iter().fold(Complex64::new(0.0, 0.0), |acc, &m| {
        acc + p.creation[m].conj() * q.creation[m]
    })
}

/// `⟨b_p b_q⟩`, symmetrised over the port order.
pub fn anomalous_correlation(p: &PortCoefficients, q: &PortCoefficients) -> Complex64 {
    let forward = Mode::ALL.iter().fold(Complex64::new(0.0, 0.0), |acc, &m| {
        acc + p.annihilation[m] * q.creation[m]
    });
    let backward = Mode::ALL.iter().fold(Complex64::new(0.0, 0.0), |acc, &m| {
        acc + q.annihilation[m] * p.creation[m]
    });
    (forward + backward) * 0.5
}

/// Mean photon number `⟨b†b⟩ = Σ|B_k|²`.
pub fn port_mean(port: &PortCoefficients) -> f64 {
    Mode::ALL.iter().map(|&m| port.creation[m].norm_sqr()).sum()
}

/// `Var(N) = N + N² + |⟨bb⟩|²`.
pub fn port_variance(port: &PortCoefficients) -> f64 {
    let n = port_mean(port);
    n + n * n + anomalous_correlation(port, port).norm_sqr()
}

/// `Cov(N_p, N_q) = |⟨b_p† b_q⟩|² + |⟨b_p b_q⟩|²` for two ports of one network.
pub fn port_covariance(p: &PortCoefficients, q: &PortCoefficients) -> f64 {
    normal_correlation(p, q).norm_sqr() + anomalous_correlation(p, q).norm_sqr()
}

/// Moments of a designated port pair `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub mean: [f64; 2],
    pub variance: [f64; 2],
    pub covariance: f64,
    /// `N_p − N_q`.
    pub diff_mean: f64,
    /// `Var(N_p − N_q)`.
    pub diff_variance: f64,
    /// `N_p + N_q`.
    pub sum_mean: f64,
}

pub fn diff_moments(p: &PortCoefficients, q: &PortCoefficients) -> MomentReport {
    let mean = [port_mean(p), port_mean(q)];
    let variance = [port_variance(p), port_variance(q)];
    let covariance = port_covariance(p, q);
    MomentReport {
        mean,
        variance,
        covariance,
        diff_mean: mean[0] - mean[1],
        diff_variance: variance[0] + variance[1] - 2.0 * covariance,
        sum_mean: mean[0] + mean[1],
    }
}
