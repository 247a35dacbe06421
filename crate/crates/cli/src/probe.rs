//! Pointwise and windowed looks at the field commutator.

use std::f64::consts::PI;
use std::fmt::Write as _;

use huygens_core::commutator::{
    commutator_matter, retarded_window_commutator, window_integrated_commutator,
};
use huygens_core::cosmo::CosmologyParams;
use huygens_core::signalling::{s_delta, s_theta, ConformalWindow};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeRequest {
    pub alpha: f64,
    pub eta: f64,
    pub eta_p: f64,
    pub r: f64,
    /// Window length for windowed probes; `None` for a pointwise probe.
    pub window: Option<f64>,
    pub tol: f64,
}

/// Human-readable probe report.
///
/// Pointwise probes need `α = 3/2`. Windowed probes integrate over
/// `[η, η + width]` (sender) and `[η', η' + width]` (receiver) through the
/// mode sum, and for `α = 3/2` print the closed-form value alongside.
pub fn run_probe(req: &ProbeRequest) -> Result<String, CliError> {
    let params = CosmologyParams::from_alpha(req.alpha, 1.0)?;
    let mut out = String::new();
    match req.window {
        None => {
            let c = commutator_matter(req.eta, req.eta_p, req.r, &params)?;
            writeln!(out, "support: {:?}", c.support).unwrap();
            writeln!(
                out,
                "delta_retarded_strength: {:.16e}",
                c.delta_retarded_strength
            )
            .unwrap();
            writeln!(
                out,
                "delta_advanced_strength: {:.16e}",
                c.delta_advanced_strength
            )
            .unwrap();
            writeln!(out, "interior_value: {:.16e}", c.interior_value).unwrap();
        }
        Some(width) => {
            if !(width > 0.0) {
                return Err(CliError::Invalid(format!(
                    "window width must be positive, got {width}"
                )));
            }
            let wa = ConformalWindow::new(req.eta, req.eta + width)?;
            let wb = ConformalWindow::new(req.eta_p, req.eta_p + width)?;
            let ret = retarded_window_commutator(req.alpha, &wa, &wb, req.r, req.tol)?;
            let full = window_integrated_commutator(req.alpha, &wa, &wb, req.r, req.tol)?;
            writeln!(out, "retarded light-cone part: {:.16e}", ret.light_cone).unwrap();
            writeln!(out, "retarded interior part: {:.16e}", ret.interior).unwrap();
            writeln!(
                out,
                "window integral: {:.16e} +/- {:.3e}",
                full.value, full.error_estimate
            )
            .unwrap();
            if params.is_matter() {
                let closed = (s_delta(&wa, &wb, req.r) + s_theta(&wa, &wb, req.r)) / (4.0 * PI);
                let dev = (ret.total() - closed).abs();
                let rel = if closed == 0.0 {
                    dev
                } else {
                    dev / closed.abs()
                };
                writeln!(
                    out,
                    "closed form: {closed:.16e} (relative deviation {rel:.3e}: {})",
                    if rel < 1e-3 || dev < 10.0 * req.tol {
                        "agree"
                    } else {
                        "DISAGREE"
                    }
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}
