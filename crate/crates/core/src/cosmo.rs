//! Spatially flat FRW background driven by a perfect fluid `p = w ρ`.
//!
//! In conformal time the scale factor is the power law
//! `a(η) = (η/η★)^(α+1/2)` with `α = (3 − 3w)/(6w + 2)`. The Big Bang sits
//! at `η = t = 0` and comoving time follows from `dt = a dη`, so
//! `t(η) = η★/(α+3/2) · (η/η★)^(α+3/2)`.

use crate::{Error, Result};

/// Mode index of a matter-dominated (`w = 0`) universe.
pub const ALPHA_MATTER: f64 = 1.5;
/// Mode index of a radiation-dominated (`w = 1/3`) universe.
pub const ALPHA_RADIATION: f64 = 0.5;

/// Lower bound on `α`; the comoving-time integral diverges at `η → 0` below it.
pub const ALPHA_FLOOR: f64 = -1.5;

/// Mode index `α` for a fluid with equation of state `w`.
///
/// Only decelerating fluids (`w > −1/3`) are accepted: for `−1 < w < −1/3`
/// conformal time is negative and bounded above, which is not the
/// `η ∈ (0, ∞)` chart used throughout, and `w = −1/3` is the pole of the map.
pub fn alpha_from_w(w: f64) -> Result<f64> {
    if !(w > -1.0) {
        return Err(Error::domain("alpha_from_w", w, "w > -1"));
    }
    if !(w > -1.0 / 3.0) {
        return Err(Error::domain(
            "alpha_from_w",
            w,
            "w > -1/3 (positive conformal time after the Big Bang)",
        ));
    }
    Ok((3.0 - 3.0 * w) / (6.0 * w + 2.0))
}

/// Inverse of [`alpha_from_w`]: `w = (3 − 2α)/(6α + 3)`.
///
/// Defined for every `α > −3/2` except `α = −1/2` (static universe, `w → ±∞`).
/// Values `α < −1/2` map to phantom fluids (`w < −1`).
pub fn w_from_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > ALPHA_FLOOR) {
        return Err(Error::domain("w_from_alpha", alpha, "alpha > -3/2"));
    }
    let den = 6.0 * alpha + 3.0;
    if den == 0.0 {
        return Err(Error::domain("w_from_alpha", alpha, "alpha != -1/2"));
    }
    Ok((3.0 - 2.0 * alpha) / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosmologyParams {
    w: f64,
    alpha: f64,
    eta_star: f64,
}

impl CosmologyParams {
    pub fn from_w(w: f64, eta_star: f64) -> Result<Self> {
        let alpha = alpha_from_w(w)?;
        Self::build(w, alpha, eta_star)
    }

    /// Builds the background from the mode index. `w` is reported as
    /// infinite for the static case `α = −1/2`.
    pub fn from_alpha(alpha: f64, eta_star: f64) -> Result<Self> {
        if !(alpha > ALPHA_FLOOR) || !alpha.is_finite() {
            return Err(Error::domain("CosmologyParams", alpha, "alpha > -3/2"));
        }
        let w = w_from_alpha(alpha).unwrap_or(f64::INFINITY);
        Self::build(w, alpha, eta_star)
    }

    /// Cold-matter domination, `α = 3/2`.
    pub fn matter(eta_star: f64) -> Result<Self> {
        Self::build(0.0, ALPHA_MATTER, eta_star)
    }

    fn build(w: f64, alpha: f64, eta_star: f64) -> Result<Self> {
        if !(eta_star > 0.0) || !eta_star.is_finite() {
            return Err(Error::domain("CosmologyParams", eta_star, "eta_star > 0"));
        }
        Ok(Self { w, alpha, eta_star })
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta_star(&self) -> f64 {
        self.eta_star
    }

    pub fn is_matter(&self) -> bool {
        self.alpha == ALPHA_MATTER
    }

    /// `α + 3/2`, the exponent relating comoving and conformal time.
    fn time_exponent(&self) -> f64 {
        self.alpha + 1.5
    }
}

/// `a(η) = (η/η★)^(α+1/2)`.
pub fn scale_factor(eta: f64, params: &CosmologyParams) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::domain("scale_factor", eta, "eta > 0"));
    }
    Ok((eta / params.eta_star).powf(params.alpha + 0.5))
}

pub fn conformal_from_comoving(t: f64, params: &CosmologyParams) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain("conformal_from_comoving", t, "t > 0"));
    }
    let p = params.time_exponent();
    Ok(params.eta_star * (p * t / params.eta_star).powf(1.0 / p))
}

pub fn comoving_from_conformal(eta: f64, params: &CosmologyParams) -> Result<f64> {
    if !(eta > 0.0) {
        return Err(Error::domain("comoving_from_conformal", eta, "eta > 0"));
    }
    let p = params.time_exponent();
    Ok(params.eta_star / p * (eta / params.eta_star).powf(p))
}
