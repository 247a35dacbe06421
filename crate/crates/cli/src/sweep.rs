//! One-parameter sweeps of the signalling channel.

use rayon::prelude::*;

use huygens_core::cosmo::conformal_from_comoving;
use huygens_core::oracle::s2_oracle_mode_sum;
use huygens_core::signalling::{
    channel_capacity, classify_case, signal_from_windows, state_prefactor, CausalCase,
    ConformalWindow, DetectorSpec, SignalBreakdown, Switching,
};

use crate::config::{ReceiverPolicy, SweepConfig, Varied};
use crate::CliError;

/// Sender window: `[T_iA, T_iA + Δ]` in comoving time.
pub fn sender_window(cfg: &SweepConfig) -> Result<ConformalWindow, CliError> {
    Ok(ConformalWindow::from_comoving(
        cfg.t_ia,
        cfg.t_ia + cfg.delta,
        &cfg.cosmology,
    )?)
}

/// Receiver window switched on at comoving `t_ib` under the configured
/// policy. The conformal policies take their reference from the base window
/// `[cfg.t_ib, cfg.t_ib + Δ]`.
pub fn receiver_window(cfg: &SweepConfig, t_ib: f64) -> Result<ConformalWindow, CliError> {
    let p = &cfg.cosmology;
    let eta_i = conformal_from_comoving(t_ib, p)?;
    let base_i = conformal_from_comoving(cfg.t_ib, p)?;
    let base_f = conformal_from_comoving(cfg.t_ib + cfg.delta, p)?;
    let eta_f = match cfg.receiver_policy {
        ReceiverPolicy::FixedComovingDuration => conformal_from_comoving(t_ib + cfg.delta, p)?,
        ReceiverPolicy::FixedConformalDuration => eta_i + (base_f - base_i),
        ReceiverPolicy::FixedConformalRatio => eta_i * (base_f / base_i),
    };
    Ok(ConformalWindow::new(eta_i, eta_f)?)
}

pub fn detectors(
    cfg: &SweepConfig,
    wa: ConformalWindow,
    wb: ConformalWindow,
) -> Result<(DetectorSpec, DetectorSpec), CliError> {
    Ok((
        DetectorSpec::new(cfg.couplings.0, Switching::Conformal(wa), cfg.states.0)?,
        DetectorSpec::new(cfg.couplings.1, Switching::Conformal(wb), cfg.states.1)?,
    ))
}

/// Full breakdown for one geometry: closed form for `α = 3/2`, mode sum
/// otherwise.
pub fn evaluate(
    cfg: &SweepConfig,
    wa: ConformalWindow,
    wb: ConformalWindow,
    r: f64,
) -> Result<SignalBreakdown, CliError> {
    let (a, b) = detectors(cfg, wa, wb)?;
    if cfg.cosmology.is_matter() {
        return Ok(signal_from_windows(&wa, &wb, r, &a, &b)?);
    }
    let case_label = classify_case(&wa, &wb, r);
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
    let rep = s2_oracle_mode_sum(&a, &b, r, &cfg.cosmology, cfg.tol)?;
    let delta_only = state_prefactor(&a, &b) * rep.s_delta_numeric;
    Ok(SignalBreakdown {
        case_label,
        s_delta: rep.s_delta_numeric,
        s_theta: rep.s_theta_numeric,
        s2: rep.s2_numeric,
        capacity: channel_capacity(rep.s2_numeric, &a, &b)?,
        capacity_delta_only: channel_capacity(delta_only, &a, &b)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub varied_name: &'static str,
    pub varied_value: f64,
    /// The breakdown, or the message of the error that stopped this point.
    pub result: Result<SignalBreakdown, String>,
}

/// One row per grid point, in grid order. Points are evaluated in
/// parallel; a failing point is recorded in its row and does not stop the
/// sweep.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    let wa = sender_window(cfg)?;
    let fixed_b = match cfg.vary {
        Varied::R => Some(receiver_window(cfg, cfg.t_ib)?),
        Varied::TiB => None,
    };
    let rows = cfg
        .grid
        .values()
        .into_par_iter()
        .map(|x| {
            let result = (|| {
                let (wb, r) = match fixed_b {
                    Some(wb) => (wb, x),
                    None => (receiver_window(cfg, x)?, cfg.r),
                };
                evaluate(cfg, wa, wb, r)
            })()
            .map_err(|e| e.to_string());
            SweepRow {
                varied_name: cfg.vary.name(),
                varied_value: x,
                result,
            }
        })
        .collect();
    Ok(rows)
}
