//! Linear input-output algebra of the Yurke, Mandel and hybrid interferometers.
//!
//! Every output port is written as
//! `b = Σ_k A_k a_k + Σ_k B_k a_k†` over the five vacuum input modes
//! [`Mode::ALL`]. Squeezers are SU(1,1) Bogoliubov maps, arm losses and
//! splitters are SU(2) maps onto dedicated vacuum modes.
//!
//! The closed-form path coefficients are evaluated directly in
//! [`yurke_ports`], [`mandel_ports`] and [`hybrid_ports`]. The operator
//! primitives on [`PortCoefficients`] (`vacuum`, `combine`, `adjoint`,
//! [`squeeze`]) let a network be composed element by element instead, which is
//! how lossy hybrids or other variants are built by hand.

use core::f64::consts::FRAC_1_SQRT_2;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{check_nonneg, check_unit, Error, Result};

/// Vacuum input modes of the network, in fixed summation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Signal input of medium A.
    SignalA,
    /// Signal input of medium B (Mandel and hybrid only).
    SignalB,
    /// Idler input of medium A.
    Idler,
    /// Vacuum entering through the signal-arm loss.
    LossSignal,
    /// Vacuum entering through the idler-arm loss.
    LossIdler,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::SignalA,
        Mode::SignalB,
        Mode::Idler,
        Mode::LossSignal,
        Mode::LossIdler,
    ];
    pub const COUNT: usize = 5;

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn label(self) -> &'static str {
        match self {
            Mode::SignalA => "sA",
            Mode::SignalB => "sB",
            Mode::Idler => "i",
            Mode::LossSignal => "loss_s",
            Mode::LossIdler => "loss_i",
        }
    }
}

/// Gain of one parametric amplifier: mean photons per mode `V = |v|²` and the
/// pump phase `arg v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezerGain {
    mean_photons: f64,
    pump_phase: f64,
}

impl SqueezerGain {
    pub fn new(mean_photons: f64, pump_phase: f64) -> Result<Self> {
        check_nonneg("mean_photons", mean_photons)?;
        if !pump_phase.is_finite() {
            return Err(Error::OutOfRange {
                name: "pump_phase",
                value: pump_phase,
            });
        }
        Ok(Self {
            mean_photons,
            pump_phase,
        })
    }

    /// Real-phase gain, the usual case.
    pub fn photons(mean_photons: f64) -> Result<Self> {
        Self::new(mean_photons, 0.0)
    }

    pub fn mean_photons(&self) -> f64 {
        self.mean_photons
    }

    pub fn pump_phase(&self) -> f64 {
        self.pump_phase
    }
}

/// Bogoliubov coefficients `(u, v)` with `u = √(1+V)` real and
/// `v = √V·e^{iθ}`, so that `|u|² − |v|² = 1`.
pub fn bogoliubov_pair(gain: SqueezerGain) -> (Complex64, Complex64) {
    let v_mag = libm::sqrt(gain.mean_photons);
    let u = Complex64::new(libm::sqrt(1.0 + gain.mean_photons), 0.0);
    let v = Complex64::from_polar(v_mag, gain.pump_phase);
    (u, v)
}

/// One interferometer arm: transmittance `T = |t|²` and the phase of `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmChannel {
    transmittance: f64,
    arm_phase: f64,
}

impl ArmChannel {
    pub fn new(transmittance: f64, arm_phase: f64) -> Result<Self> {
        check_unit("transmittance", transmittance)?;
        if !arm_phase.is_finite() {
            return Err(Error::OutOfRange {
                name: "arm_phase",
                value: arm_phase,
            });
        }
        Ok(Self {
            transmittance,
            arm_phase,
        })
    }

    pub fn lossless() -> Self {
        Self {
            transmittance: 1.0,
            arm_phase: 0.0,
        }
    }

    pub fn transmittance(&self) -> f64 {
        self.transmittance
    }

    pub fn arm_phase(&self) -> f64 {
        self.arm_phase
    }

    /// Transmission amplitude `t = √T·e^{iθ}`.
    pub fn t(&self) -> Complex64 {
        Complex64::from_polar(libm::sqrt(self.transmittance), self.arm_phase)
    }

    /// Reflection amplitude into the loss mode, `r = √(1−T)` (real).
    pub fn r(&self) -> Complex64 {
        Complex64::new(libm::sqrt(1.0 - self.transmittance), 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Yurke,
    Mandel,
    Hybrid,
}

impl Variant {
    pub const fn name(self) -> &'static str {
        match self {
            Variant::Yurke => "Yurke",
            Variant::Mandel => "Mandel",
            Variant::Hybrid => "hybrid",
        }
    }
}

/// Topology and every physical parameter of one interferometer.
///
/// `mixing` is the hybrid out-coupling ϱ (τ = 1 − ϱ); other variants ignore it.
/// The lossless hybrid also ignores the arm transmittances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometerSpec {
    pub variant: Variant,
    pub gain_a: SqueezerGain,
    pub gain_b: SqueezerGain,
    pub signal_channel: ArmChannel,
    pub idler_channel: ArmChannel,
    mixing: f64,
}

impl InterferometerSpec {
    pub fn new(
        variant: Variant,
        gain_a: SqueezerGain,
        gain_b: SqueezerGain,
        signal_channel: ArmChannel,
        idler_channel: ArmChannel,
        mixing: f64,
    ) -> Result<Self> {
        check_unit("mixing", mixing)?;
        Ok(Self {
            variant,
            gain_a,
            gain_b,
            signal_channel,
            idler_channel,
            mixing,
        })
    }

    /// Real gains and real signal arm; the whole interferometer phase sits on
    /// `arg t_i`.
    pub fn with_phase(
        variant: Variant,
        v_a: f64,
        v_b: f64,
        t_s: f64,
        t_i: f64,
        phase: f64,
    ) -> Result<Self> {
        Self::new(
            variant,
            SqueezerGain::photons(v_a)?,
            SqueezerGain::photons(v_b)?,
            ArmChannel::new(t_s, 0.0)?,
            ArmChannel::new(t_i, phase)?,
            0.0,
        )
    }

    /// Lossless equal-gain hybrid with out-coupling `mixing` at phase `phase`.
    pub fn hybrid(n: f64, mixing: f64, phase: f64) -> Result<Self> {
        Self::new(
            Variant::Hybrid,
            SqueezerGain::photons(n)?,
            SqueezerGain::photons(n)?,
            ArmChannel::lossless(),
            ArmChannel::new(1.0, phase)?,
            mixing,
        )
    }

    pub fn mixing(&self) -> f64 {
        self.mixing
    }

    /// Interferometer phase `arg(t_s t_i v_A v_B* u_A u_B)`; `u` is real so this
    /// is also the Mandel and hybrid phase.
    pub fn interferometer_phase(&self) -> f64 {
        let (u_a, v_a) = bogoliubov_pair(self.gain_a);
        let (u_b, v_b) = bogoliubov_pair(self.gain_b);
        let unit = |z: Complex64| {
            if z.norm() > 0.0 {
                z / z.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        };
        let product = unit(self.signal_channel.t())
            * unit(self.idler_channel.t())
            * unit(v_a)
            * unit(v_b).conj()
            * unit(u_a)
            * unit(u_b);
        product.arg()
    }
}

/// Coefficients of one output port over the five input modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortCoefficients {
    /// Multiplies the input annihilation operators `a_k`.
    pub annihilation: ModeVector,
    /// Multiplies the input creation operators `a_k†`.
    pub creation: ModeVector,
}

/// Dense complex vector indexed by [`Mode`]; absent couplings are exact zeros.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModeVector(pub [Complex64; Mode::COUNT]);

impl ModeVector {
    pub const ZERO: ModeVector = ModeVector([Complex64::new(0.0, 0.0); Mode::COUNT]);

    pub fn iter(&self) -> impl Iterator<Item = (Mode, Complex64)> + '_ {
        Mode::ALL.iter().map(move |&m| (m, self.0[m.index()]))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl Index<Mode> for ModeVector {
    type Output = Complex64;
    fn index(&self, mode: Mode) -> &Complex64 {
        &self.0[mode.index()]
    }
}

impl IndexMut<Mode> for ModeVector {
    fn index_mut(&mut self, mode: Mode) -> &mut Complex64 {
        &mut self.0[mode.index()]
    }
}

impl PortCoefficients {
    pub const ZERO: PortCoefficients = PortCoefficients {
        annihilation: ModeVector::ZERO,
        creation: ModeVector::ZERO,
    };

    /// The bare input annihilation operator of `mode`.
    pub fn vacuum(mode: Mode) -> Self {
        let mut port = Self::ZERO;
        port.annihilation[mode] = Complex64::new(1.0, 0.0);
        port
    }

    /// `c1·p + c2·q`.
    pub fn combine(c1: Complex64, p: &Self, c2: Complex64, q: &Self) -> Self {
        let mut out = Self::ZERO;
        for m in Mode::ALL {
            out.annihilation[m] = c1 * p.annihilation[m] + c2 * q.annihilation[m];
            out.creation[m] = c1 * p.creation[m] + c2 * q.creation[m];
        }
        out
    }

    /// Coefficients of `b†`, read as an operator in the same `(a, a†)` basis.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::ZERO;
        for m in Mode::ALL {
            out.annihilation[m] = self.creation[m].conj();
            out.creation[m] = self.annihilation[m].conj();
        }
        out
    }

    /// `[b, b†] = Σ|A|² − Σ|B|²`, which must be one for a physical port.
    pub fn commutator(&self) -> f64 {
        self.annihilation.norm_sqr() - self.creation.norm_sqr()
    }

    /// `[b_p, b_q†]`, zero for distinct ports of one network.
    pub fn cross_commutator(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for m in Mode::ALL {
            acc += self.annihilation[m] * other.annihilation[m].conj()
                - self.creation[m] * other.creation[m].conj();
        }
        acc
    }

    /// True when the port is a pure passive combination of inputs.
    pub fn is_passive(&self) -> bool {
        self.creation
            .0
            .iter()
            .all(|z| *z == Complex64::new(0.0, 0.0))
    }
}

/// Applies a two-mode squeezer to a (signal, idler) operator pair:
/// `s' = u s + v i†`, `i' = u i + v s†`.
pub fn squeeze(
    gain: SqueezerGain,
    signal: &PortCoefficients,
    idler: &PortCoefficients,
) -> (PortCoefficients, PortCoefficients) {
    let (u, v) = bogoliubov_pair(gain);
    (
        PortCoefficients::combine(u, signal, v, &idler.adjoint()),
        PortCoefficients::combine(u, idler, v, &signal.adjoint()),
    )
}

/// Sends `input` through a lossy arm, `t·input + r·l`.
pub fn attenuate(channel: ArmChannel, input: &PortCoefficients, loss: Mode) -> PortCoefficients {
    PortCoefficients::combine(
        channel.t(),
        input,
        channel.r(),
        &PortCoefficients::vacuum(loss),
    )
}

fn require(spec: &InterferometerSpec, variant: Variant) -> Result<()> {
    if spec.variant == variant {
        Ok(())
    } else {
        Err(Error::WrongVariant {
            expected: variant.name(),
        })
    }
}

/// Signal output of the Yurke interferometer:
/// `b_Y = α a_sA + κ l_s + β a_i† + λ l_i†`.
pub fn yurke_ports(spec: &InterferometerSpec) -> Result<PortCoefficients> {
    require(spec, Variant::Yurke)?;
    let (u_a, v_a) = bogoliubov_pair(spec.gain_a);
    let (u_b, v_b) = bogoliubov_pair(spec.gain_b);
    let (t_s, r_s) = (spec.signal_channel.t(), spec.signal_channel.r());
    let (t_i, r_i) = (spec.idler_channel.t(), spec.idler_channel.r());

    let mut port = PortCoefficients::ZERO;
    port.annihilation[Mode::SignalA] = u_b * t_s * u_a + v_b * t_i.conj() * v_a.conj();
    port.annihilation[Mode::LossSignal] = u_b * r_s;
    port.creation[Mode::Idler] = u_b * t_s * v_a + v_b * t_i.conj() * u_a.conj();
    port.creation[Mode::LossIdler] = v_b * r_i.conj();
    Ok(port)
}

/// The two exits `(b⁺, b⁻)` of the Mandel interferometer behind the 50:50
/// splitter `b± = (b_sA ± b_sB)/√2`.
pub fn mandel_ports(spec: &InterferometerSpec) -> Result<(PortCoefficients, PortCoefficients)> {
    require(spec, Variant::Mandel)?;
    let (u_a, v_a) = bogoliubov_pair(spec.gain_a);
    let (u_b, v_b) = bogoliubov_pair(spec.gain_b);
    let (t_s, r_s) = (spec.signal_channel.t(), spec.signal_channel.r());
    let (t_i, r_i) = (spec.idler_channel.t(), spec.idler_channel.r());
    let h = FRAC_1_SQRT_2;

    let exit = |sign: f64| {
        let mut port = PortCoefficients::ZERO;
        port.annihilation[Mode::SignalA] = (t_s * u_a + sign * v_b * t_i.conj() * v_a.conj()) * h;
        port.annihilation[Mode::SignalB] = u_b * (sign * h);
        port.annihilation[Mode::LossSignal] = r_s * h;
        port.creation[Mode::Idler] = (t_s * v_a + sign * v_b * t_i.conj() * u_a.conj()) * h;
        port.creation[Mode::LossIdler] = v_b * r_i.conj() * (sign * h);
        port
    };
    Ok((exit(1.0), exit(-1.0)))
}

/// The two exits `(d⁺, d⁻)` of the lossless hybrid interferometer.
///
/// The out-coupler has transmittance `τ = 1 − ϱ` and sends the reflected
/// signal of A, together with the `sB` vacuum, to a recombiner of
/// transmittance `1 − ϱ/2`. The recombiner's reflection carries the extra
/// `π` shift (`r = −√(ϱ/2)`), so `ϱ = 1` gives the Mandel exits in the same
/// order and `ϱ = 0` gives the Yurke output on `d⁺`.
pub fn hybrid_ports(spec: &InterferometerSpec) -> Result<(PortCoefficients, PortCoefficients)> {
    require(spec, Variant::Hybrid)?;
    let rho = check_unit("mixing", spec.mixing)?;
    let tau = 1.0 - rho;
    let (u_a, v_a) = bogoliubov_pair(spec.gain_a);
    let (u_b, v_b) = bogoliubov_pair(spec.gain_b);
    let t_s = Complex64::from_polar(libm::sqrt(tau), spec.signal_channel.arm_phase());
    let r_s = Complex64::new(libm::sqrt(rho), 0.0);
    let t_i = Complex64::from_polar(1.0, spec.idler_channel.arm_phase());
    let t = Complex64::new(libm::sqrt(1.0 - rho / 2.0), 0.0);
    let r = Complex64::new(-libm::sqrt(rho / 2.0), 0.0);

    let alpha_y = u_b * t_s * u_a + v_b * t_i.conj() * v_a.conj();
    let beta_y = u_b * t_s * v_a + v_b * t_i.conj() * u_a.conj();

    let mut plus = PortCoefficients::ZERO;
    plus.annihilation[Mode::SignalA] = -r * r_s.conj() * u_a + t * alpha_y;
    plus.annihilation[Mode::SignalB] = t * u_b * r_s + r * t_s.conj();
    plus.creation[Mode::Idler] = -r * r_s.conj() * v_a + t * beta_y;

    let mut minus = PortCoefficients::ZERO;
    minus.annihilation[Mode::SignalA] = -t.conj() * r_s.conj() * u_a - r.conj() * alpha_y;
    minus.annihilation[Mode::SignalB] = -r.conj() * u_b * r_s + t.conj() * t_s.conj();
    minus.creation[Mode::Idler] = -t.conj() * r_s.conj() * v_a - r.conj() * beta_y;

    Ok((plus, minus))
}

/// Output ports of any topology: one port for Yurke, an exit pair otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutputPorts {
    Single(PortCoefficients),
    Pair(PortCoefficients, PortCoefficients),
}

impl OutputPorts {
    pub fn of(spec: &InterferometerSpec) -> Result<Self> {
        match spec.variant {
            Variant::Yurke => yurke_ports(spec).map(OutputPorts::Single),
            Variant::Mandel => mandel_ports(spec).map(|(p, m)| OutputPorts::Pair(p, m)),
            Variant::Hybrid => hybrid_ports(spec).map(|(p, m)| OutputPorts::Pair(p, m)),
        }
    }

    pub fn first(&self) -> &PortCoefficients {
        match self {
            OutputPorts::Single(p) | OutputPorts::Pair(p, _) => p,
        }
    }

    pub fn second(&self) -> Option<&PortCoefficients> {
        match self {
            OutputPorts::Single(_) => None,
            OutputPorts::Pair(_, m) => Some(m),
        }
    }
}
