//! The commutator `[φ(x, t), φ(x', t')]` of a massless, minimally coupled
//! scalar in the power-law FRW background.
//!
//! Sign convention: every value here is the coefficient of the overall
//! imaginary unit, with `Δη = η − η'`. For a sender at `η` and a receiver
//! at `η' > η + R` (receiver inside the sender's future light cone) the
//! interior value is positive.
//!
//! In terms of the Bessel mode kernel `g_α` the same object reads
//!
//! ```text
//! [φ(x,t), φ(x',t')] / i = −1/(π² a a' R) ∫₀^∞ dk sin(kR) g_α(η, η', k)
//! ```
//!
//! which is antisymmetric because `g_α` is; at `α = 3/2` it reproduces
//! [`commutator_matter`] term by term.

mod windowed;

use std::f64::consts::PI;

use crate::cosmo::{scale_factor, CosmologyParams};
use crate::specfun::bessel_jy;
use crate::{Error, Result};

pub use windowed::{
    retarded_window_commutator, spacelike_band_commutator, window_integrated_commutator,
    RetardedParts,
};

/// Where the second event sits relative to the first one's light cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// `|Δη| < R`.
    Spacelike,
    /// `Δη = R`: the first event is on the future light cone of the second.
    RetardedCone,
    /// `Δη = −R`: the second event is on the future light cone of the first.
    AdvancedCone,
    /// `|Δη| > R`.
    Interior,
}

/// The commutator split into its light-cone and interior pieces.
///
/// `delta_retarded_strength` multiplies `δ(Δη − R)` and
/// `delta_advanced_strength` multiplies `δ(Δη + R)`; they are reported even
/// when the point is off the cone, in which case `support` says so.
/// Exchanging the two events maps the retarded strength onto minus the
/// advanced one and negates `interior_value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorValue {
    pub delta_retarded_strength: f64,
    pub delta_advanced_strength: f64,
    pub interior_value: f64,
    pub support: Support,
}

/// Closed-form commutator of a matter-dominated universe (`α = 3/2`):
///
/// ```text
/// [φ, φ'] = i/(4π) [ (δ(Δη+R) − δ(Δη−R)) / (a a' R)
///                  + (θ(−Δη−R) − θ(Δη−R)) / (a a' η η') ]
/// ```
pub fn commutator_matter(
    eta: f64,
    eta_p: f64,
    r: f64,
    params: &CosmologyParams,
) -> Result<CommutatorValue> {
    if !params.is_matter() {
        return Err(Error::Unsupported(format!(
            "closed-form commutator needs alpha = 3/2, got {}",
            params.alpha()
        )));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("commutator_matter", r, "R > 0"));
    }
    // Symmetric products, so that exchanging the arguments is bit-exact.
    let (lo, hi) = if eta <= eta_p {
        (eta, eta_p)
    } else {
        (eta_p, eta)
    };
    let aa = scale_factor(lo, params)? * scale_factor(hi, params)?;
    let delta_eta = eta - eta_p;
    let cone = 1.0 / (4.0 * PI * aa * r);
    let tail = 1.0 / (4.0 * PI * aa * (lo * hi));

    let slack = 1e-12 * r.max(delta_eta.abs());
    let support = if (delta_eta - r).abs() <= slack {
        Support::RetardedCone
    } else if (delta_eta + r).abs() <= slack {
        Support::AdvancedCone
    } else if delta_eta.abs() < r {
        Support::Spacelike
    } else {
        Support::Interior
    };
    let interior_value = match support {
        Support::Interior if delta_eta < 0.0 => tail,
        Support::Interior => -tail,
        _ => 0.0,
    };
    Ok(CommutatorValue {
        delta_retarded_strength: -cone,
        delta_advanced_strength: cone,
        interior_value,
        support,
    })
}

/// The mode kernel
///
/// ```text
/// g_α(η, η', k) = √(η/η') [𝒢^{JY} + 𝒢^{YJ}],
/// 𝒢^{JY} = J_α(kη) Y_α(kη') / (Y_α(kη') ℒ^J(kη') − J_α(kη') ℒ^Y(kη')),
/// ℒ^J = J_{α−1} − J_{α+1},
/// ```
///
/// with `𝒢^{YJ}`, `ℒ^Y` obtained by exchanging `J ↔ Y`, evaluated as
/// written (the denominators are formed from Bessel values, not replaced by
/// their Wronskian).
pub fn mode_kernel_g(alpha: f64, eta: f64, eta_p: f64, k: f64) -> Result<f64> {
    check_kernel_args(alpha, eta, eta_p, k)?;
    let u = k * eta;
    let v = k * eta_p;
    let bu = bessel_jy(alpha, u)?;
    let bv = bessel_jy(alpha, v)?;
    let (jv, yv) = (bv.j, bv.y);
    let lj = bv.j_lower(alpha, v) - bv.j_upper(alpha, v);
    let ly = bv.y_lower(alpha, v) - bv.y_upper(alpha, v);
    let g_jy = bu.j * yv / (yv * lj - jv * ly);
    let g_yj = bu.y * jv / (jv * ly - yv * lj);
    Ok((eta / eta_p).sqrt() * (g_jy + g_yj))
}

/// Wronskian-reduced form of [`mode_kernel_g`]:
/// `(π k/4) √(η η') [Y_α(kη) J_α(kη') − J_α(kη) Y_α(kη')]`.
pub fn mode_kernel_reduced(alpha: f64, eta: f64, eta_p: f64, k: f64) -> Result<f64> {
    check_kernel_args(alpha, eta, eta_p, k)?;
    let bu = bessel_jy(alpha, k * eta)?;
    let bv = bessel_jy(alpha, k * eta_p)?;
    Ok(0.25 * PI * k * (eta * eta_p).sqrt() * (bu.y * bv.j - bu.j * bv.y))
}

/// `Y_α ℒ^J − J_α ℒ^Y` at `x`; analytically `−4/(π x)`.
pub fn kernel_denominator(alpha: f64, x: f64) -> Result<f64> {
    let b = bessel_jy(alpha, x)?;
    let lj = b.j_lower(alpha, x) - b.j_upper(alpha, x);
    let ly = b.y_lower(alpha, x) - b.y_upper(alpha, x);
    Ok(b.y * lj - b.j * ly)
}

fn check_kernel_args(alpha: f64, eta: f64, eta_p: f64, k: f64) -> Result<()> {
    if !(alpha > crate::cosmo::ALPHA_FLOOR) || !alpha.is_finite() {
        return Err(Error::domain("mode_kernel_g", alpha, "alpha > -3/2"));
    }
    for (v, what) in [(eta, "eta > 0"), (eta_p, "eta_p > 0"), (k, "k > 0")] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::domain("mode_kernel_g", v, what));
        }
    }
    Ok(())
}
