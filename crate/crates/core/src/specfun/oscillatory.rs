//! Infinite-range integrals of sine-modulated envelopes by integration
//! between phase zeros followed by Wynn's epsilon extrapolation of the
//! partial sums.

use std::f64::consts::PI;

use super::quad::{adaptive_quad_with, QuadOptions, QuadResult};
use crate::{Error, Result};

const MAX_SEGMENTS: usize = 2000;
/// Terms inspected before a non-decaying sequence is declared divergent.
const DIVERGENCE_WINDOW: usize = 40;
/// Partial sums fed to the epsilon table.
const EPSILON_WINDOW: usize = 21;

/// `∫_a^∞ envelope(k) · sin(phase_rate · k) dk`.
pub fn oscillatory_tail_quad<F>(
    envelope: F,
    phase_rate: f64,
    a: f64,
    tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    oscillatory_tail_quad_with(|k| Ok(envelope(k)), phase_rate, a, QuadOptions::new(tol))
}

/// Fallible-envelope version of [`oscillatory_tail_quad`].
///
/// Converged once three successive extrapolated estimates agree to `tol`;
/// the reported error is the drift over those steps plus the segment errors.
/// The envelope need not be smooth or single-signed; it only has to decay.
/// Segments are the intervals between consecutive zeros of the sine.
pub fn oscillatory_tail_quad_with<F>(
    mut envelope: F,
    phase_rate: f64,
    a: f64,
    opts: QuadOptions,
) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(phase_rate > 0.0) || !phase_rate.is_finite() {
        return Err(Error::domain(
            "oscillatory_tail_quad",
            phase_rate,
            "phase_rate > 0",
        ));
    }
    if !(a >= 0.0) || !a.is_finite() {
        return Err(Error::domain(
            "oscillatory_tail_quad",
            a,
            "a >= 0 and finite",
        ));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tail tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let half_period = PI / phase_rate;
    let mut n = (a / half_period).floor() + 1.0;
    let mut left = a;

    let seg_opts = QuadOptions {
        tol: 0.1 * opts.tol,
        ..opts
    };
    let mut terms: Vec<f64> = Vec::new();
    let mut sums: Vec<f64> = Vec::new();
    let mut seg_error = 0.0;
    let mut evaluations = 0;
    let mut total = 0.0;
    let mut previous: Option<f64> = None;
    let mut stable = 0;
    let mut drift = 0.0;

    for _ in 0..MAX_SEGMENTS {
        let right = n * half_period;
        let seg = adaptive_quad_with(
            |k| Ok(envelope(k)? * (phase_rate * k).sin()),
            left,
            right,
            seg_opts,
        )
        .map_err(|e| e.within(&format!("tail segment [{left}, {right}]")))?;
        seg_error += seg.error_estimate;
        evaluations += seg.evaluations;
        total += seg.value;
        terms.push(seg.value);
        sums.push(total);
        left = right;
        n += 1.0;

        let decayed = decayed(&terms);
        if terms.len() >= DIVERGENCE_WINDOW && !decayed {
            return Err(Error::Divergence {
                context: format!("oscillatory tail from {a}"),
                last_term: seg.value,
            });
        }
        if terms.len() < 4 || !decayed {
            continue;
        }
        let start = sums.len().saturating_sub(EPSILON_WINDOW);
        let estimate = wynn_epsilon(&sums[start..]);
        if let Some(prev) = previous {
            let change = (estimate - prev).abs();
            if change <= opts.tol * estimate.abs().max(1.0) {
                stable += 1;
                drift += change;
                if stable >= 3 {
                    return Ok(QuadResult {
                        value: estimate,
                        error_estimate: drift + seg_error,
                        evaluations,
                    });
                }
            } else {
                stable = 0;
                drift = 0.0;
            }
        }
        previous = Some(estimate);
    }
    let estimate = previous.unwrap_or(total);
    if decayed(&terms) {
        Err(Error::Convergence {
            context: format!("oscillatory tail from {a}"),
            estimate,
            error_estimate: terms.last().map_or(f64::INFINITY, |t| t.abs()),
        })
    } else {
        Err(Error::Divergence {
            context: format!("oscillatory tail from {a}"),
            last_term: terms.last().copied().unwrap_or(f64::NAN),
        })
    }
}

/// Whether the latest terms are at most half the size of the first ones.
fn decayed(terms: &[f64]) -> bool {
    if terms.len() < 4 {
        return false;
    }
    let head = terms[..3].iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let tail = terms[terms.len() - 3..]
        .iter()
        .fold(0.0f64, |m, t| m.max(t.abs()));
    tail <= 0.5 * head
}

/// Wynn's epsilon algorithm: the deepest even column entry built from `s`.
fn wynn_epsilon(s: &[f64]) -> f64 {
    let mut best = *s.last().expect("non-empty sequence");
    let mut prev = vec![0.0; s.len() + 1];
    let mut cur = s.to_vec();
    let mut column = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == 0.0 {
                // The column has converged exactly.
                return if column % 2 == 0 { cur[i + 1] } else { best };
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        column += 1;
        if next.iter().any(|v| !v.is_finite()) {
            break;
        }
        if column % 2 == 0 {
            best = *next.last().expect("non-empty column");
        }
        prev = cur;
        cur = next;
    }
    best
}
