//! Phase estimation with SU(1,1) nonlinear interferometers.
//!
//! Models the Yurke, Mandel and hybrid configurations with internal loss and
//! vacuum input:
//!
//! * [`algebra`] builds the Bogoliubov input-output coefficients of each output port,
//! * [`moments`] evaluates photon-number moments of those ports by Wick contraction,
//! * [`analytic`] holds the closed-form fringes and variance laws,
//! * [`sensitivity`] turns fringes into phase uncertainties and Fisher information,
//! * [`optimize`] is the derivative-free minimiser used to cross-check optimal phases.
//!
//! The crate is `no_std` without `alloc`; transcendental functions come from `libm`.
#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod analytic;
pub mod error;
pub mod moments;
pub mod optimize;
pub mod sensitivity;

pub use algebra::{
    bogoliubov_pair, hybrid_ports, mandel_ports, yurke_ports, ArmChannel, InterferometerSpec, Mode,
    OutputPorts, PortCoefficients, SqueezerGain, Variant,
};
pub use analytic::{FringeModel, FringeSign};
pub use error::{Error, Result};
pub use moments::{diff_moments, port_covariance, port_mean, port_variance, MomentReport};
pub use optimize::numeric_phi_min;
pub use sensitivity::{HighGainExpansion, SensitivityResult};
