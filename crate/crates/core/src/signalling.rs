//! Closed-form signalling estimator and channel capacity in a
//! matter-dominated universe.
//!
//! With sharp switching, the sender's coupling shifts the receiver's
//! excitation probability at order `λ_A λ_B` by
//!
//! ```text
//! S₂ = (1/π) Re(α*_A β_A) Im(α*_B β_B) [S_δ + S_θ]
//! ```
//!
//! where `S_δ` is the light-cone contact and `S_θ = ∬ dη dη'/(η η')` over
//! the part of the window rectangle with `η' − η ≥ R`. The relative position
//! of the windows and the light cone falls into one of six [`CausalCase`]s.

use std::fmt;

use num_complex::Complex64;

use crate::cosmo::{conformal_from_comoving, CosmologyParams};
use crate::specfun::dilog;
use crate::{Error, Result};

/// Switching interval in conformal time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalWindow {
    eta_i: f64,
    eta_f: f64,
}

impl ConformalWindow {
    pub fn new(eta_i: f64, eta_f: f64) -> Result<Self> {
        if !(eta_i > 0.0) || !eta_f.is_finite() {
            return Err(Error::domain("ConformalWindow", eta_i, "0 < eta_i"));
        }
        if !(eta_i < eta_f) {
            return Err(Error::InvalidInput(format!(
                "window must open before it closes: [{eta_i}, {eta_f}]"
            )));
        }
        Ok(Self { eta_i, eta_f })
    }

    /// Maps a comoving-time interval to conformal time.
    pub fn from_comoving(t_on: f64, t_off: f64, params: &CosmologyParams) -> Result<Self> {
        if !(t_on < t_off) {
            return Err(Error::InvalidInput(format!(
                "switch-on must precede switch-off: [{t_on}, {t_off}]"
            )));
        }
        Self::new(
            conformal_from_comoving(t_on, params)?,
            conformal_from_comoving(t_off, params)?,
        )
    }

    pub fn eta_i(&self) -> f64 {
        self.eta_i
    }

    pub fn eta_f(&self) -> f64 {
        self.eta_f
    }
}

/// Qubit amplitudes `α|e⟩ + β|g⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    excited: Complex64,
    ground: Complex64,
}

impl QubitState {
    const NORM_TOL: f64 = 1e-12;

    pub fn new(excited: Complex64, ground: Complex64) -> Result<Self> {
        let norm = excited.norm_sqr() + ground.norm_sqr();
        if !((norm - 1.0).abs() <= Self::NORM_TOL) {
            return Err(Error::InvalidInput(format!(
                "state not normalized: |alpha|^2 + |beta|^2 = {norm}"
            )));
        }
        Ok(Self { excited, ground })
    }

    /// Real amplitudes with a relative phase: `α = |α|`, `β = √(1−|α|²) e^{−iφ}`,
    /// so that `arg α − arg β = φ`.
    pub fn from_polar(excited_modulus: f64, relative_phase: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&excited_modulus) {
            return Err(Error::domain(
                "QubitState::from_polar",
                excited_modulus,
                "0 <= |alpha| <= 1",
            ));
        }
        let g = (1.0 - excited_modulus * excited_modulus).sqrt();
        Self::new(
            Complex64::new(excited_modulus, 0.0),
            Complex64::from_polar(g, -relative_phase),
        )
    }

    pub fn excited(&self) -> Complex64 {
        self.excited
    }

    pub fn ground(&self) -> Complex64 {
        self.ground
    }

    /// `α* β`.
    pub fn coherence(&self) -> Complex64 {
        self.excited.conj() * self.ground
    }
}

/// Switch-on/off times, either comoving or already conformal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Switching {
    Comoving { t_on: f64, t_off: f64 },
    Conformal(ConformalWindow),
}

/// One detector: coupling, sharp switching window and initial qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSpec {
    coupling: f64,
    switching: Switching,
    state: QubitState,
    gap: f64,
}

impl DetectorSpec {
    pub fn new(coupling: f64, switching: Switching, state: QubitState) -> Result<Self> {
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(Error::domain("DetectorSpec", coupling, "coupling >= 0"));
        }
        if let Switching::Comoving { t_on, t_off } = switching {
            if !(t_on > 0.0) {
                return Err(Error::domain("DetectorSpec", t_on, "t_on > 0"));
            }
            if !(t_on < t_off) || !t_off.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "switch-on must precede switch-off: [{t_on}, {t_off}]"
                )));
            }
        }
        Ok(Self {
            coupling,
            switching,
            state,
            gap: 0.0,
        })
    }

    /// Sets the energy gap. Only `0` is supported by the estimators; the
    /// field exists so that callers get an explicit error otherwise.
    pub fn with_gap(mut self, gap: f64) -> Self {
        self.gap = gap;
        self
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn switching(&self) -> Switching {
        self.switching
    }

    pub fn state(&self) -> QubitState {
        self.state
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn window(&self, params: &CosmologyParams) -> Result<ConformalWindow> {
        match self.switching {
            Switching::Comoving { t_on, t_off } => {
                ConformalWindow::from_comoving(t_on, t_off, params)
            }
            Switching::Conformal(w) => Ok(w),
        }
    }

    pub(crate) fn require_zero_gap(&self) -> Result<()> {
        if self.gap != 0.0 {
            return Err(Error::Unsupported(format!(
                "detector gap {} (only zero-gap detectors are modelled)",
                self.gap
            )));
        }
        Ok(())
    }
}

/// Relative position of the windows and the sender's light cone.
///
/// With `P = η_iA + R` and `Q = η_fA + R` (where the cone from A's window
/// edges reaches B's worldline):
///
/// | case | condition |
/// |------|-----------|
/// | 1 | `η_fB ≤ P` |
/// | 2 | `η_iB < P`, `η_fB ≤ Q` |
/// | 3 | `η_iB ≥ P`, `η_fB ≤ Q` |
/// | 4 | `η_iB ≥ P`, `η_fB > Q` |
/// | 5 | `η_iB ≥ Q` |
/// | 6 | `η_iB < P`, `η_fB > Q` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CausalCase {
    /// No causal contact.
    One = 1,
    Two = 2,
    Three = 3,
    Four = 4,
    /// B entirely inside A's future light cone.
    Five = 5,
    Six = 6,
}

impl CausalCase {
    pub const ALL: [CausalCase; 6] = [
        CausalCase::One,
        CausalCase::Two,
        CausalCase::Three,
        CausalCase::Four,
        CausalCase::Five,
        CausalCase::Six,
    ];

    pub fn label(self) -> u8 {
        self as u8
    }

    pub fn from_label(label: u8) -> Option<Self> {
        Self::ALL.get(usize::from(label).wrapping_sub(1)).copied()
    }
}

impl fmt::Display for CausalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Everything computed for one sender/receiver pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalBreakdown {
    pub case_label: CausalCase,
    pub s_delta: f64,
    pub s_theta: f64,
    pub s2: f64,
    pub capacity: f64,
    pub capacity_delta_only: f64,
}

pub fn classify_case(wa: &ConformalWindow, wb: &ConformalWindow, r: f64) -> CausalCase {
    let p = wa.eta_i + r;
    let q = wa.eta_f + r;
    if wb.eta_f <= p {
        CausalCase::One
    } else if wb.eta_i >= q {
        CausalCase::Five
    } else if wb.eta_i < p {
        if wb.eta_f <= q {
            CausalCase::Two
        } else {
            CausalCase::Six
        }
    } else if wb.eta_f <= q {
        CausalCase::Three
    } else {
        CausalCase::Four
    }
}

/// `z₁ = min(η_fA + R, η_fB)/R`, `z₂ = max(η_iA + R, η_iB)/R`.
pub fn z_bounds(wa: &ConformalWindow, wb: &ConformalWindow, r: f64) -> (f64, f64) {
    (
        (wa.eta_f + r).min(wb.eta_f) / r,
        (wa.eta_i + r).max(wb.eta_i) / r,
    )
}

/// Light-cone contact: the length of B's worldline crossed by the cone of
/// A's window, over `R`.
pub fn s_delta(wa: &ConformalWindow, wb: &ConformalWindow, r: f64) -> f64 {
    let (z1, z2) = z_bounds(wa, wb, r);
    (z1 - z2).max(0.0)
}

/// Timelike-interior contribution `∬ dη dη'/(η η')` over `η' − η ≥ R`.
pub fn s_theta(wa: &ConformalWindow, wb: &ConformalWindow, r: f64) -> f64 {
    match classify_case(wa, wb, r) {
        CausalCase::One => 0.0,
        CausalCase::Five => (wa.eta_f / wa.eta_i).ln() * (wb.eta_f / wb.eta_i).ln(),
        _ => {
            let (z1, z2) = z_bounds(wa, wb, r);
            if z1 <= z2 {
                return 0.0;
            }
            // R(z − 1) is formed from the window edges directly; z·R − R
            // loses digits when R ≫ η.
            let top = wa.eta_f.min(wb.eta_f - r);
            let bottom = wa.eta_i.max(wb.eta_i - r);
            let ell = |z: f64, shifted: f64| -> f64 {
                (shifted / wa.eta_i).ln() * z.ln() + dilog(1.0 - z).expect("1 - z < 0")
            };
            let n1 = (top / wa.eta_i).ln() * (wb.eta_f / (r * z1)).ln();
            ell(z1, top) - ell(z2, bottom) + n1
        }
    }
}

/// `S₂` for windows already in conformal time.
pub fn signal_from_windows(
    wa: &ConformalWindow,
    wb: &ConformalWindow,
    r: f64,
    det_a: &DetectorSpec,
    det_b: &DetectorSpec,
) -> Result<SignalBreakdown> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("signalling", r, "R > 0"));
    }
    det_a.require_zero_gap()?;
    det_b.require_zero_gap()?;
    let case_label = classify_case(wa, wb, r);
    if case_label == CausalCase::One {
        return Ok(SignalBreakdown {
            case_label,
            s_delta: 0.0,
            s_theta: 0.0,
            s2: 0.0,
            capacity: 0.0,
            capacity_delta_only: 0.0,
        });
    }
    let sd = s_delta(wa, wb, r);
    let st = s_theta(wa, wb, r);
    let prefactor = state_prefactor(det_a, det_b);
    let s2 = prefactor * (sd + st);
    Ok(SignalBreakdown {
        case_label,
        s_delta: sd,
        s_theta: st,
        s2,
        capacity: channel_capacity(s2, det_a, det_b)?,
        capacity_delta_only: channel_capacity(prefactor * sd, det_a, det_b)?,
    })
}

/// `S₂` and capacity for two detectors in a matter-dominated universe.
pub fn s2(
    det_a: &DetectorSpec,
    det_b: &DetectorSpec,
    r: f64,
    params: &CosmologyParams,
) -> Result<SignalBreakdown> {
    if !params.is_matter() {
        return Err(Error::Unsupported(format!(
            "closed-form signalling needs alpha = 3/2, got {}",
            params.alpha()
        )));
    }
    let wa = det_a.window(params)?;
    let wb = det_b.window(params)?;
    signal_from_windows(&wa, &wb, r, det_a, det_b)
}

/// `(1/π) Re(α*_A β_A) Im(α*_B β_B)`.
pub fn state_prefactor(det_a: &DetectorSpec, det_b: &DetectorSpec) -> f64 {
    det_a.state.coherence().re * det_b.state.coherence().im / std::f64::consts::PI
}

/// Capacity in bits of the couple/don't-couple binary channel,
/// `λ_A² λ_B² (2/ln 2) (S₂/(4|α_B||β_B|))²`.
pub fn channel_capacity(s2_value: f64, det_a: &DetectorSpec, det_b: &DetectorSpec) -> Result<f64> {
    let spread = det_b.state.excited.norm() * det_b.state.ground.norm();
    if spread == 0.0 {
        return Err(Error::DegenerateReceiver);
    }
    let la = det_a.coupling;
    let lb = det_b.coupling;
    let x = s2_value / (4.0 * spread);
    Ok(la * la * lb * lb * (2.0 / std::f64::consts::LN_2) * x * x)
}

/// Sender and receiver states maximizing the capacity: equal weights, with
/// `arg α − arg β` equal to `π` for the sender and `π/2` for the receiver.
pub fn optimal_detector_states() -> (QubitState, QubitState) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sender = QubitState {
        excited: Complex64::new(-h, 0.0),
        ground: Complex64::new(h, 0.0),
    };
    let receiver = QubitState {
        excited: Complex64::new(0.0, h),
        ground: Complex64::new(h, 0.0),
    };
    (sender, receiver)
}
