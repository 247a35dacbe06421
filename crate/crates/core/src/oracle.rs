//! Brute-force evaluations of the signalling estimator.
//!
//! Two independent routes:
//!
//! * [`s2_oracle_matter`] integrates the matter-era commutator pointwise
//!   over the window rectangle by iterated adaptive quadrature with exact
//!   polygon limits;
//! * [`s2_oracle_mode_sum`] goes through the Bessel mode sum and works for
//!   any `α` in the supported range.
//!
//! Only the retarded part of the rectangle (receiver event in the causal
//! future of the sender event) enters, as in the closed form.

use std::f64::consts::PI;

use rand::Rng;

use crate::commutator::{commutator_matter, retarded_window_commutator};
use crate::cosmo::{scale_factor, CosmologyParams};
use crate::signalling::{
    classify_case, state_prefactor, CausalCase, ConformalWindow, DetectorSpec,
};
use crate::specfun::{adaptive_quad_with, QuadOptions, QuadResult};
use crate::{Error, Result};

/// Smallest `α` the mode-sum oracle accepts.
pub const MODE_SUM_ALPHA_MIN: f64 = -1.49;
/// Largest `α` the mode-sum oracle accepts.
pub const MODE_SUM_ALPHA_MAX: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    ClosedFormCommutatorQuad,
    ModeSum,
}

impl OracleMethod {
    pub fn name(self) -> &'static str {
        match self {
            OracleMethod::ClosedFormCommutatorQuad => "closed-form-commutator-quad",
            OracleMethod::ModeSum => "mode-sum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub s_delta_numeric: f64,
    pub s_theta_numeric: f64,
    pub s2_numeric: f64,
    pub quadrature_error: f64,
    pub method: OracleMethod,
}

/// `S₂` from the matter-era commutator, integrated numerically.
///
/// The light-cone term is integrated along `η' = η + R` and the interior
/// over `{η ∈ A, η' ∈ B, η' − η > R}`, each weighted by `a(η) a(η')`.
pub fn s2_oracle_matter(
    det_a: &DetectorSpec,
    det_b: &DetectorSpec,
    r: f64,
    params: &CosmologyParams,
    tol: f64,
) -> Result<OracleReport> {
    if !params.is_matter() {
        return Err(Error::Unsupported(format!(
            "matter oracle needs alpha = 3/2, got {}",
            params.alpha()
        )));
    }
    check_common(det_a, det_b, r, tol)?;
    let wa = det_a.window(params)?;
    let wb = det_b.window(params)?;
    let opts = QuadOptions::new(tol);

    let weighted = |eta: f64, eta_p: f64| -> Result<(f64, f64)> {
        let c = commutator_matter(eta, eta_p, r, params)?;
        let aa = scale_factor(eta, params)? * scale_factor(eta_p, params)?;
        Ok((aa * c.delta_advanced_strength, aa * c.interior_value))
    };

    // Light cone: η' = η + R crosses B while η ∈ A.
    let lo = wa.eta_i().max(wb.eta_i() - r);
    let hi = wa.eta_f().min(wb.eta_f() - r);
    let cone = if lo < hi {
        adaptive_quad_with(|eta| Ok(weighted(eta, eta + r)?.0), lo, hi, opts)
            .map_err(|e| e.within(&format!("light-cone segment eta in [{lo}, {hi}]")))?
    } else {
        QuadResult::zero()
    };

    // Interior polygon; the lower η' limit switches form at η = η_iB − R.
    let top = wa.eta_f().min(wb.eta_f() - r);
    let mut interior = QuadResult::zero();
    if wa.eta_i() < top {
        let mut cuts = vec![wa.eta_i()];
        let kink = wb.eta_i() - r;
        if kink > wa.eta_i() && kink < top {
            cuts.push(kink);
        }
        cuts.push(top);
        let inner_opts = QuadOptions::new(0.01 * tol);
        for piece in cuts.windows(2) {
            let (p, s) = (piece[0], piece[1]);
            let part = adaptive_quad_with(
                |eta| {
                    let from = wb.eta_i().max(eta + r);
                    if from >= wb.eta_f() {
                        return Ok(0.0);
                    }
                    let v = adaptive_quad_with(
                        |eta_p| Ok(weighted(eta, eta_p)?.1),
                        from,
                        wb.eta_f(),
                        inner_opts,
                    )?;
                    Ok(v.value)
                },
                p,
                s,
                opts,
            )
            .map_err(|e| e.within(&format!("interior region eta in [{p}, {s}]")))?;
            interior = interior.add(part);
        }
    }

    Ok(report(
        det_a,
        det_b,
        cone,
        interior,
        OracleMethod::ClosedFormCommutatorQuad,
    ))
}

/// `S₂` for a general power-law universe from the Bessel mode sum.
///
/// `α` must lie in `[MODE_SUM_ALPHA_MIN, MODE_SUM_ALPHA_MAX]`; beyond the
/// upper end Bessel orders grow and the result is not trusted. Results for
/// `α < 1/2` have no closed form to compare against.
pub fn s2_oracle_mode_sum(
    det_a: &DetectorSpec,
    det_b: &DetectorSpec,
    r: f64,
    params: &CosmologyParams,
    tol: f64,
) -> Result<OracleReport> {
    let alpha = params.alpha();
    if !(MODE_SUM_ALPHA_MIN..=MODE_SUM_ALPHA_MAX).contains(&alpha) {
        return Err(Error::domain(
            "s2_oracle_mode_sum",
            alpha,
            "-1.49 <= alpha <= 10",
        ));
    }
    check_common(det_a, det_b, r, tol)?;
    let wa = det_a.window(params)?;
    let wb = det_b.window(params)?;
    let parts = retarded_window_commutator(alpha, &wa, &wb, r, tol)?;
    let cone = QuadResult {
        value: parts.light_cone,
        error_estimate: 0.0,
        evaluations: 1,
    };
    let interior = QuadResult {
        value: parts.interior,
        error_estimate: parts.error_estimate,
        evaluations: parts.evaluations,
    };
    Ok(report(det_a, det_b, cone, interior, OracleMethod::ModeSum))
}

fn check_common(det_a: &DetectorSpec, det_b: &DetectorSpec, r: f64, tol: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("oracle", r, "R > 0"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("oracle", tol, "tol > 0"));
    }
    det_a.require_zero_gap()?;
    det_b.require_zero_gap()
}

/// Converts window-integrated commutator pieces (`∬ a a' [φ, φ']/i`) into
/// the `S_δ`, `S_θ` normalization of the closed form.
fn report(
    det_a: &DetectorSpec,
    det_b: &DetectorSpec,
    cone: QuadResult,
    interior: QuadResult,
    method: OracleMethod,
) -> OracleReport {
    let s_delta = 4.0 * PI * cone.value;
    let s_theta = 4.0 * PI * interior.value;
    let prefactor = state_prefactor(det_a, det_b);
    OracleReport {
        s_delta_numeric: s_delta,
        s_theta_numeric: s_theta,
        s2_numeric: prefactor * (s_delta + s_theta),
        quadrature_error: 4.0
            * PI
            * prefactor.abs()
            * (cone.error_estimate + interior.error_estimate),
        method,
    }
}

/// Random window pair and separation realizing `case`.
///
/// Window edges are log-uniform in `[0.1, 100]` and `R` log-uniform in
/// `[0.01, 50]`; draws are rejected until the classification matches.
pub fn random_geometry<G: Rng + ?Sized>(
    case: CausalCase,
    rng: &mut G,
) -> Result<(ConformalWindow, ConformalWindow, f64)> {
    const MAX_DRAWS: usize = 1_000_000;
    let mut log_uniform = |lo: f64, hi: f64| -> f64 { (rng.gen_range(lo.ln()..hi.ln())).exp() };
    for _ in 0..MAX_DRAWS {
        let (a0, a1) = (log_uniform(0.1, 100.0), log_uniform(0.1, 100.0));
        let (b0, b1) = (log_uniform(0.1, 100.0), log_uniform(0.1, 100.0));
        let r = log_uniform(0.01, 50.0);
        let (Ok(wa), Ok(wb)) = (
            ConformalWindow::new(a0.min(a1), a0.max(a1)),
            ConformalWindow::new(b0.min(b1), b0.max(b1)),
        ) else {
            continue;
        };
        if classify_case(&wa, &wb, r) == case {
            return Ok((wa, wb, r));
        }
    }
    Err(Error::InvalidInput(format!(
        "no geometry of case {case} found in {MAX_DRAWS} draws"
    )))
}
