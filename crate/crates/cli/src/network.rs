//! A cubic lattice of receivers filling the sender's future light cone.
//!
//! Every receiver switches on at the same comoving time, so a receiver at
//! comoving distance `R` hears the sender through the timelike interior
//! alone (case 5) as long as `η_iB ≥ η_fA + R`. In that case the capacity
//! does not depend on `R`, and the network total is the per-receiver value
//! times the number of lattice sites inside the cone.

use rayon::prelude::*;
use serde::Serialize;

use huygens_core::signalling::{classify_case, CausalCase, ConformalWindow};

use crate::config::SweepConfig;
use crate::sweep::{evaluate, receiver_window, sender_window};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkSlice {
    pub t_ib: f64,
    pub eta_ib: f64,
    pub eta_fb: f64,
    pub receiver_count: u64,
    pub per_receiver_capacity: f64,
    pub total_bits: f64,
}

/// Lattice sites `n ≠ 0` with spacing `s` whose receivers are in case 5.
///
/// Membership is decided by the same classification used for the signal,
/// so a site exactly on the cone (`η_iB = η_fA + s|n|`) is kept.
pub fn count_receivers(wa: &ConformalWindow, wb: &ConformalWindow, spacing: f64) -> u64 {
    let reach = wb.eta_i() - wa.eta_f();
    if !(reach > 0.0) || !(spacing > 0.0) {
        return 0;
    }
    // The origin is the sender's own site; count it as inside while
    // sizing columns and remove it afterwards.
    let inside = |n2: i64| -> bool {
        n2 == 0 || classify_case(wa, wb, spacing * (n2 as f64).sqrt()) == CausalCase::Five
    };
    let m = (reach / spacing).floor() as i64 + 1;
    let total: u64 = (-m..=m)
        .into_par_iter()
        .map(|x| {
            let mut count = 0u64;
            for y in -m..=m {
                let xy = x * x + y * y;
                if !inside(xy) {
                    continue;
                }
                // Largest |z| inside: floating estimate, then fixed up
                // against the exact membership test.
                let rest = (reach / spacing).powi(2) - xy as f64;
                let mut z = if rest > 0.0 {
                    rest.sqrt().floor() as i64
                } else {
                    0
                };
                while z > 0 && !inside(xy + z * z) {
                    z -= 1;
                }
                while inside(xy + (z + 1) * (z + 1)) {
                    z += 1;
                }
                count += (2 * z + 1) as u64;
            }
            count
        })
        .sum();
    total - 1
}

/// Sender fixed by the config; one receiver slice per entry of
/// `cfg.slices`, with windows set by the receiver policy.
pub fn run_network(cfg: &SweepConfig) -> Result<Vec<NetworkSlice>, CliError> {
    if !cfg.cosmology.is_matter() {
        return Err(CliError::Invalid(format!(
            "network runs need a matter-dominated universe (alpha = 3/2), got alpha = {}",
            cfg.cosmology.alpha()
        )));
    }
    let wa = sender_window(cfg)?;
    cfg.slices
        .iter()
        .map(|&t_ib| {
            let wb = receiver_window(cfg, t_ib)?;
            let reach = wb.eta_i() - wa.eta_f();
            let per_receiver = if reach > 0.0 {
                evaluate(cfg, wa, wb, 0.5 * reach)?.capacity
            } else {
                0.0
            };
            let receiver_count = count_receivers(&wa, &wb, cfg.lattice_spacing);
            Ok(NetworkSlice {
                t_ib,
                eta_ib: wb.eta_i(),
                eta_fb: wb.eta_f(),
                receiver_count,
                per_receiver_capacity: per_receiver,
                total_bits: receiver_count as f64 * per_receiver,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse_config, ReceiverPolicy};

    fn win(a: f64, b: f64) -> ConformalWindow {
        ConformalWindow::new(a, b).unwrap()
    }

    /// Direct enumeration of the cube.
    fn brute(reach: f64, spacing: f64) -> u64 {
        let m = (reach / spacing).ceil() as i64 + 1;
        let mut n = 0;
        for x in -m..=m {
            for y in -m..=m {
                for z in -m..=m {
                    let r2 = (x * x + y * y + z * z) as f64;
                    if r2 > 0.0 && spacing * r2.sqrt() <= reach {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn radius_ten_ball() {
        // Reach 10 in lattice units: the closed ball of radius 10 holds 4169
        // sites, one of them the sender's own.
        let (wa, wb) = (win(0.5, 1.0), win(11.0, 12.0));
        assert_eq!(count_receivers(&wa, &wb, 1.0), 4168);
        assert_eq!(brute(10.0, 1.0), 4168);
    }

    #[test]
    fn matches_enumeration() {
        for (reach, s) in [
            (3.7, 1.0),
            (5.0, 0.5),
            (2.0, 0.3),
            (0.9, 1.0),
            (1.0, 1.0),
            (7.25, 0.7),
        ] {
            let (wa, wb) = (win(0.5, 1.0), win(1.0 + reach, 2.0 + reach));
            assert_eq!(
                count_receivers(&wa, &wb, s),
                brute(reach, s),
                "reach {reach} spacing {s}"
            );
        }
    }

    #[test]
    fn degenerate_lattices() {
        let (wa, wb) = (win(0.5, 1.0), win(11.0, 12.0));
        assert_eq!(count_receivers(&wa, &wb, 25.0), 0);
        assert_eq!(count_receivers(&wa, &win(0.9, 2.0), 0.1), 0);
    }

    #[test]
    fn conformal_ratio_network_grows() {
        let cfg = parse_config("receiver_policy = fixed-conformal-ratio").unwrap();
        assert_eq!(cfg.receiver_policy, ReceiverPolicy::FixedConformalRatio);
        let slices = run_network(&cfg).unwrap();
        assert_eq!(slices.len(), 5);
        let c0 = slices[0].per_receiver_capacity;
        assert!(c0 > 0.0);
        for w in slices.windows(2) {
            assert!(w[1].total_bits > w[0].total_bits);
            assert!((w[1].per_receiver_capacity - c0).abs() <= 1e-12 * c0);
        }
    }

    #[test]
    fn needs_matter() {
        let cfg = parse_config("w = 1/3").unwrap();
        assert!(matches!(run_network(&cfg), Err(CliError::Invalid(_))));
    }
}
