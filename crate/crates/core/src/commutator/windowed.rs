//! Commutator integrated over two switching windows, from the Bessel mode
//! sum.
//!
//! The `k`-integral of the kernel is distributional, so it is never taken
//! pointwise. Instead:
//!
//! 1. The two leading large-`k` terms of `g_α`,
//!    `½ sin(kΔη)` and `(q/2k)(1/η − 1/η') cos(kΔη)` with `q = (4α² − 1)/8`,
//!    are removed. The first carries the whole light-cone `δ`, whose window
//!    integral is elementary; the second integrates to zero at every
//!    timelike-separated pair.
//! 2. The remainder is integrated over the window region first. Every term
//!    is a product `f(η) h(η')`, so the region integral reduces to 1D
//!    composite Gauss–Legendre sums and cumulative integrals.
//! 3. The resulting `W(k)` decays fast enough that `∫ sin(kR) W(k) dk` is
//!    done by adaptive quadrature up to `k_c` plus an oscillatory tail.

use std::f64::consts::PI;

use crate::signalling::ConformalWindow;
use crate::specfun::{
    adaptive_quad_with, bessel_jy, oscillatory_tail_quad_with, GaussLegendre, QuadOptions,
    QuadResult,
};
use crate::{Error, Result};

/// Largest phase change `k·h` across one 16-point panel.
const PANEL_PHASE: f64 = 6.0;
/// Largest panel width relative to its distance from the origin.
const PANEL_RELATIVE: f64 = 0.5;

/// Retarded part of the window-integrated commutator: the contribution of
/// receiver events in the causal future of sender events.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetardedParts {
    /// Light-cone (`δ`) contribution.
    pub light_cone: f64,
    /// Timelike-interior contribution.
    pub interior: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl RetardedParts {
    pub fn total(&self) -> f64 {
        self.light_cone + self.interior
    }
}

/// `∬ a(η) a(η') [φ(x_A, η), φ(x_B, η')]/i dη dη'` over `η ∈ A`, `η' ∈ B`,
/// restricted to `η' − η ≥ R`.
pub fn retarded_window_commutator(
    alpha: f64,
    window_a: &ConformalWindow,
    window_b: &ConformalWindow,
    r: f64,
    tol: f64,
) -> Result<RetardedParts> {
    check(alpha, r, tol)?;
    let region = Region {
        a: window_a.eta_i(),
        b: window_a.eta_f(),
        c: window_b.eta_i(),
        e: window_b.eta_f(),
        lo: r,
        hi: f64::INFINITY,
    };
    let overlap =
        (window_a.eta_f() + r).min(window_b.eta_f()) - (window_a.eta_i() + r).max(window_b.eta_i());
    let light_cone = overlap.max(0.0) / (4.0 * PI * r);
    let k_part = k_integral(alpha, &region, r, tol)?;
    let scale = -1.0 / (PI * PI * r);
    Ok(RetardedParts {
        light_cone,
        interior: scale * k_part.value,
        error_estimate: scale.abs() * k_part.error_estimate,
        evaluations: k_part.evaluations,
    })
}

/// `∬ a(η) a(η') [φ(x_A, η), φ(x_B, η')]/i dη dη'` over both full windows.
///
/// Antisymmetry splits it into the retarded part and minus the retarded
/// part with the windows exchanged; the spacelike band contributes nothing.
pub fn window_integrated_commutator(
    alpha: f64,
    window_a: &ConformalWindow,
    window_b: &ConformalWindow,
    r: f64,
    tol: f64,
) -> Result<QuadResult> {
    let ret = retarded_window_commutator(alpha, window_a, window_b, r, 0.5 * tol)?;
    let adv = retarded_window_commutator(alpha, window_b, window_a, r, 0.5 * tol)?;
    Ok(QuadResult {
        value: ret.total() - adv.total(),
        error_estimate: ret.error_estimate + adv.error_estimate,
        evaluations: ret.evaluations + adv.evaluations,
    })
}

/// The same integral over the spacelike band `|η' − η| < R` only, computed
/// from the kernel without using that it must vanish there. A microcausality
/// check.
pub fn spacelike_band_commutator(
    alpha: f64,
    window_a: &ConformalWindow,
    window_b: &ConformalWindow,
    r: f64,
    tol: f64,
) -> Result<QuadResult> {
    check(alpha, r, tol)?;
    let region = Region {
        a: window_a.eta_i(),
        b: window_a.eta_f(),
        c: window_b.eta_i(),
        e: window_b.eta_f(),
        lo: -r,
        hi: r,
    };
    let q = kernel_q(alpha);
    // The subtracted 1/k term integrates to −(q/(4πR))(1/η − 1/η') inside
    // the band; add it back.
    let mut leading = QuadResult::zero();
    for (p, s) in region.pieces() {
        let piece = adaptive_quad_with(
            |eta| {
                let (u, v) = region.limits(eta);
                Ok((v - u) / eta - (v / u).ln())
            },
            p,
            s,
            QuadOptions::new(0.1 * tol),
        )?;
        leading = leading.add(piece);
    }
    let leading = leading.scale(-q / (4.0 * PI * r));
    let k_part = k_integral(alpha, &region, r, tol)?.scale(-1.0 / (PI * PI * r));
    Ok(leading.add(k_part))
}

fn check(alpha: f64, r: f64, tol: f64) -> Result<()> {
    if !(alpha > crate::cosmo::ALPHA_FLOOR) || !alpha.is_finite() {
        return Err(Error::domain("window commutator", alpha, "alpha > -3/2"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("window commutator", r, "R > 0"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("window commutator", tol, "tol > 0"));
    }
    Ok(())
}

fn kernel_q(alpha: f64) -> f64 {
    (4.0 * alpha * alpha - 1.0) / 8.0
}

/// `∫₀^∞ sin(kR) W(k) dk` for the remainder kernel over `region`.
fn k_integral(alpha: f64, region: &Region, r: f64, tol: f64) -> Result<QuadResult> {
    if region.pieces().is_empty() {
        return Ok(QuadResult::zero());
    }
    let q = kernel_q(alpha);
    let tol_k = 0.5 * tol * PI * PI * r;
    let k_c = (2.0 * PI / r).max(2.0 * PI / region.e);
    let head = adaptive_quad_with(
        |k| Ok((k * r).sin() * region_w(alpha, q, k, region)?),
        0.0,
        k_c,
        QuadOptions::new(tol_k),
    )
    .map_err(|e| e.within(&format!("k-panel [0, {k_c}]")))?;
    let tail = oscillatory_tail_quad_with(
        |k| region_w(alpha, q, k, region),
        r,
        k_c,
        QuadOptions::new(tol_k),
    )
    .map_err(|e| e.within(&format!("k-tail from {k_c}")))?;
    Ok(head.add(tail))
}

/// `{η ∈ [a, b], η' ∈ [c, e], lo ≤ η' − η ≤ hi}`.
#[derive(Debug, Clone, Copy)]
struct Region {
    a: f64,
    b: f64,
    c: f64,
    e: f64,
    lo: f64,
    hi: f64,
}

impl Region {
    /// Sub-intervals of `η` on which both `η'` limits keep one form.
    fn pieces(&self) -> Vec<(f64, f64)> {
        let start = self.a.max(self.c - self.hi);
        let end = self.b.min(self.e - self.lo);
        if !(start < end) {
            return Vec::new();
        }
        let mut cuts = vec![start, end];
        for x in [self.c - self.lo, self.e - self.hi] {
            if x > start && x < end {
                cuts.push(x);
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.windows(2)
            .filter(|w| w[0] < w[1])
            .map(|w| (w[0], w[1]))
            .collect()
    }

    fn limits(&self, eta: f64) -> (f64, f64) {
        (self.c.max(eta + self.lo), self.e.min(eta + self.hi))
    }
}

/// Composite 16-point Gauss–Legendre grid.
struct Grid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// `(first node index, half width)` per panel.
    panels: Vec<(usize, f64)>,
}

impl Grid {
    /// Panels on `[p, q]` no wider than `PANEL_PHASE/k` nor
    /// `PANEL_RELATIVE · (x − origin)`.
    fn new(p: f64, q: f64, k: f64, origin: f64) -> Self {
        let gl = GaussLegendre::sixteen();
        let mut grid = Grid {
            nodes: Vec::new(),
            weights: Vec::new(),
            panels: Vec::new(),
        };
        let mut x = p;
        while x < q {
            let mut h = (PANEL_PHASE / k)
                .min(PANEL_RELATIVE * (x - origin))
                .min(q - x);
            if q - x - h < 0.25 * h {
                h = q - x;
            }
            let half = 0.5 * h;
            let mid = x + half;
            grid.panels.push((grid.nodes.len(), half));
            for (t, w) in gl.nodes.iter().zip(&gl.weights) {
                grid.nodes.push(mid + half * t);
                grid.weights.push(half * w);
            }
            x = if h == q - x { q } else { x + h };
        }
        grid
    }

    fn integrate<const N: usize>(&self, vals: &[[f64; N]]) -> [f64; N] {
        let mut out = [0.0; N];
        for (w, v) in self.weights.iter().zip(vals) {
            for j in 0..N {
                out[j] += w * v[j];
            }
        }
        out
    }

    /// `∫_{start}^{node_m}` of the interpolant, for every node.
    fn cumulative<const N: usize>(&self, vals: &[[f64; N]], start: [f64; N]) -> Vec<[f64; N]> {
        let gl = GaussLegendre::sixteen();
        let n = gl.len();
        let mut out = Vec::with_capacity(vals.len());
        let mut prefix = start;
        for &(first, half) in &self.panels {
            let panel = &vals[first..first + n];
            for row in &gl.cumulative {
                let mut acc = prefix;
                for (s, v) in row.iter().zip(panel) {
                    for j in 0..N {
                        acc[j] += half * s * v[j];
                    }
                }
                out.push(acc);
            }
            for (w, v) in gl.weights.iter().zip(panel) {
                for j in 0..N {
                    prefix[j] += half * w * v[j];
                }
            }
        }
        out
    }
}

/// Sender-side basis at `η`: `√η J, √η Y, sin kη, cos kη, cos kη/η, sin kη/η`.
fn sender_basis(alpha: f64, k: f64, eta: f64) -> Result<[f64; 6]> {
    let x = k * eta;
    let b = bessel_jy(alpha, x)?;
    let s = eta.sqrt();
    let (sn, cs) = x.sin_cos();
    Ok([s * b.j, s * b.y, sn, cs, cs / eta, sn / eta])
}

/// Receiver-side basis at `η'`: the two literal kernel factors
/// `Y/(√η' D^{JY})`, `J/(√η' D^{YJ})`, then `sin, cos, cos/η', sin/η'`.
fn receiver_basis(alpha: f64, k: f64, eta_p: f64) -> Result<[f64; 6]> {
    let v = k * eta_p;
    let b = bessel_jy(alpha, v)?;
    let lj = b.j_lower(alpha, v) - b.j_upper(alpha, v);
    let ly = b.y_lower(alpha, v) - b.y_upper(alpha, v);
    let d_jy = b.y * lj - b.j * ly;
    let d_yj = b.j * ly - b.y * lj;
    let s = eta_p.sqrt();
    let (sn, cs) = v.sin_cos();
    Ok([
        b.y / (s * d_jy),
        b.j / (s * d_yj),
        sn,
        cs,
        cs / eta_p,
        sn / eta_p,
    ])
}

/// `(sender index, receiver index)` of the separable terms of the remainder
/// kernel `g − ½ sin(kΔη) − (q/2k)(1/η − 1/η') cos(kΔη)`.
const PAIRS: [(usize, usize); 8] = [
    (0, 0),
    (1, 1),
    (2, 3),
    (3, 2),
    (4, 3),
    (5, 2),
    (3, 4),
    (2, 5),
];

fn pair_coefficients(q: f64, k: f64) -> [f64; 8] {
    let c = 0.5 * q / k;
    [1.0, 1.0, -0.5, 0.5, -c, -c, c, c]
}

/// `W(k) = ∬_region (remainder kernel) dη dη'`.
fn region_w(alpha: f64, q: f64, k: f64, region: &Region) -> Result<f64> {
    let coef = pair_coefficients(q, k);
    let receiver = |x: f64| receiver_basis(alpha, k, x);
    let mut full_b: Option<[f64; 6]> = None;
    let mut total = 0.0;

    for (p, s) in region.pieces() {
        let mid = 0.5 * (p + s);
        let lower_slanted = mid + region.lo > region.c;
        let upper_slanted = mid + region.hi < region.e;
        let mut origin: f64 = 0.0;
        if lower_slanted {
            origin = origin.max(-region.lo);
        }
        if upper_slanted {
            origin = origin.max(-region.hi);
        }
        let grid = Grid::new(p, s, k, origin);
        let sender = grid
            .nodes
            .iter()
            .map(|&x| sender_basis(alpha, k, x))
            .collect::<Result<Vec<_>>>()?;

        let upper = if upper_slanted {
            edge_cumulative(&grid, region.hi, region.c, p, k, &receiver)?
        } else {
            let full = match full_b {
                Some(v) => v,
                None => {
                    let g = Grid::new(region.c, region.e, k, 0.0);
                    let vals = g
                        .nodes
                        .iter()
                        .map(|&x| receiver(x))
                        .collect::<Result<Vec<_>>>()?;
                    let v = g.integrate(&vals);
                    full_b = Some(v);
                    v
                }
            };
            vec![full; grid.nodes.len()]
        };
        let lower = if lower_slanted {
            Some(edge_cumulative(
                &grid, region.lo, region.c, p, k, &receiver,
            )?)
        } else {
            None
        };

        for (m, w) in grid.weights.iter().enumerate() {
            let f = &sender[m];
            let mut acc = 0.0;
            for (&(i, j), c) in PAIRS.iter().zip(&coef) {
                let hb = upper[m][j] - lower.as_ref().map_or(0.0, |l| l[m][j]);
                acc += c * f[i] * hb;
            }
            total += w * acc;
        }
    }
    Ok(total)
}

/// `H(η_m + shift) = ∫_c^{η_m + shift} h` at every node of `grid`, for a
/// piece starting at `p` whose shifted edge lies inside `[c, e]`.
fn edge_cumulative<F>(
    grid: &Grid,
    shift: f64,
    c: f64,
    p: f64,
    k: f64,
    h: &F,
) -> Result<Vec<[f64; 6]>>
where
    F: Fn(f64) -> Result<[f64; 6]>,
{
    let start = p + shift;
    let offset = if start > c {
        let g = Grid::new(c, start, k, 0.0);
        let vals = g.nodes.iter().map(|&x| h(x)).collect::<Result<Vec<_>>>()?;
        g.integrate(&vals)
    } else {
        [0.0; 6]
    };
    let vals = grid
        .nodes
        .iter()
        .map(|&x| h(x + shift))
        .collect::<Result<Vec<_>>>()?;
    Ok(grid.cumulative(&vals, offset))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::adaptive_quad;

    fn win(a: f64, b: f64) -> ConformalWindow {
        ConformalWindow::new(a, b).unwrap()
    }

    /// `∬ dη dη'/(4π η η')` over the retarded part, plus the light cone:
    /// the matter-era answer by direct quadrature.
    fn matter_retarded(wa: &ConformalWindow, wb: &ConformalWindow, r: f64) -> f64 {
        let inner = |eta: f64| {
            let lo = wb.eta_i().max(eta + r);
            if lo >= wb.eta_f() {
                0.0
            } else {
                (wb.eta_f() / lo).ln() / eta
            }
        };
        let theta = adaptive_quad(inner, wa.eta_i(), wa.eta_f(), 1e-12)
            .unwrap()
            .value;
        let overlap =
            ((wa.eta_f() + r).min(wb.eta_f()) - (wa.eta_i() + r).max(wb.eta_i())).max(0.0);
        (theta + overlap / r) / (4.0 * PI)
    }

    #[test]
    fn radiation_interior_vanishes() {
        let parts =
            retarded_window_commutator(0.5, &win(1.0, 2.0), &win(10.0, 11.0), 3.0, 1e-8).unwrap();
        assert_eq!(parts.light_cone, 0.0);
        assert!(parts.interior.abs() < 1e-6, "{parts:?}");
    }

    #[test]
    fn matter_case_five() {
        let wa = win(1.0, 2.0);
        let wb = win(10.0, 11.0);
        let v = window_integrated_commutator(1.5, &wa, &wb, 3.0, 1e-8).unwrap();
        let want = 2f64.ln() * 1.1f64.ln() / (4.0 * PI);
        assert!(
            (v.value - want).abs() < 1e-3 * want,
            "{} vs {want}",
            v.value
        );
    }

    #[test]
    fn matter_with_light_cone_contact() {
        let cases = [
            (win(1.0, 3.0), win(2.5, 3.5), 1.0),
            (win(1.0, 3.0), win(1.5, 5.0), 1.0),
            (win(0.5, 1.5), win(1.0, 4.0), 0.7),
        ];
        for (wa, wb, r) in cases {
            let want = matter_retarded(&wa, &wb, r) - matter_retarded(&wb, &wa, r);
            let v = window_integrated_commutator(1.5, &wa, &wb, r, 1e-8).unwrap();
            assert!(
                (v.value - want).abs() < 1e-3 * want,
                "{wa:?} {wb:?}: {} vs {want}",
                v.value
            );
        }
    }

    #[test]
    fn swapping_windows_negates() {
        let wa = win(1.0, 3.0);
        let wb = win(2.5, 3.5);
        let x = window_integrated_commutator(2.5, &wa, &wb, 0.4, 1e-8).unwrap();
        let y = window_integrated_commutator(2.5, &wb, &wa, 0.4, 1e-8).unwrap();
        assert!((x.value + y.value).abs() < 1e-12, "{} {}", x.value, y.value);
    }

    #[test]
    fn no_contact_is_zero() {
        let v =
            window_integrated_commutator(1.5, &win(1.0, 2.0), &win(1.0, 2.0), 100.0, 1e-8).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn spacelike_band_is_silent() {
        let tol = 1e-8;
        for alpha in [0.5, 1.5, 2.5] {
            for (wa, wb, r) in [
                (win(1.0, 2.0), win(1.5, 2.5), 3.0),
                (win(1.0, 3.0), win(2.5, 3.5), 1.0),
            ] {
                let v = spacelike_band_commutator(alpha, &wa, &wb, r, tol).unwrap();
                assert!(v.value.abs() < 10.0 * tol, "alpha={alpha}: {v:?}");
            }
        }
    }

    #[test]
    fn alpha_five_halves_interior() {
        // Inside the future cone the α = 5/2 commutator is
        // P₂'(Z)/(4π a a' η η') = 3Z/(4π a a' η η'), Z = (η² + η'² − R²)/(2ηη'),
        // the Legendre analogue of the matter-era 1/(4π a a' η η').
        let wa = win(1.0, 2.0);
        let wb = win(10.0, 11.0);
        let r = 3.0;
        let inner = |eta: f64| {
            adaptive_quad(
                |etap: f64| {
                    let z = (eta * eta + etap * etap - r * r) / (2.0 * eta * etap);
                    3.0 * z / (4.0 * PI * eta * etap)
                },
                wb.eta_i(),
                wb.eta_f(),
                1e-13,
            )
            .unwrap()
            .value
        };
        let want = adaptive_quad(inner, wa.eta_i(), wa.eta_f(), 1e-12)
            .unwrap()
            .value;
        let v = window_integrated_commutator(2.5, &wa, &wb, r, 1e-8).unwrap();
        assert!(v.value.abs() > 1e-3);
        assert!(
            (v.value - want).abs() < 1e-4 * want.abs(),
            "{} vs {want}",
            v.value
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        let w = win(1.0, 2.0);
        assert!(window_integrated_commutator(-1.6, &w, &w, 1.0, 1e-8).is_err());
        assert!(window_integrated_commutator(1.5, &w, &w, 0.0, 1e-8).is_err());
        assert!(window_integrated_commutator(1.5, &w, &w, 1.0, 0.0).is_err());
    }
}
