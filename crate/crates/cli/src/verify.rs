//! Closed form against the matter-era quadrature oracle on random
//! geometries.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use huygens_core::cosmo::CosmologyParams;
use huygens_core::oracle::{random_geometry, s2_oracle_matter};
use huygens_core::signalling::{
    optimal_detector_states, signal_from_windows, CausalCase, ConformalWindow, DetectorSpec,
    Switching,
};

use crate::CliError;

/// Quadrature tolerance of the oracle; well below any sensible comparison
/// tolerance.
const ORACLE_TOL: f64 = 1e-11;
/// Absolute floor at zero, relative to the comparison tolerance.
const ZERO_FLOOR: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyEntry {
    pub case: CausalCase,
    pub window_a: ConformalWindow,
    pub window_b: ConformalWindow,
    pub r: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.entries.iter().map(|e| e.deviation).fold(0.0, f64::max)
    }
}

/// `per_case` random geometries in each of the six cases, drawn from a
/// ChaCha8 stream seeded with `seed`. An entry passes when
/// `|oracle − closed| < tol · |closed|`, or `< 10⁻⁴ tol` when the closed form
/// is zero.
pub fn run_verify(seed: u64, per_case: usize, tol: f64) -> Result<VerifyReport, CliError> {
    if per_case == 0 {
        return Err(CliError::Invalid(
            "per-case count must be at least 1".into(),
        ));
    }
    if !(tol >= 0.0) {
        return Err(CliError::Invalid(format!(
            "tolerance must be non-negative, got {tol}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut geometries = Vec::with_capacity(6 * per_case);
    for case in CausalCase::ALL {
        for _ in 0..per_case {
            geometries.push((case, random_geometry(case, &mut rng)?));
        }
    }
    let matter = CosmologyParams::matter(1.0)?;
    let (sa, sb) = optimal_detector_states();
    let entries = geometries
        .into_par_iter()
        .map(|(case, (wa, wb, r))| -> Result<VerifyEntry, CliError> {
            let a = DetectorSpec::new(1.0, Switching::Conformal(wa), sa)?;
            let b = DetectorSpec::new(1.0, Switching::Conformal(wb), sb)?;
            let closed = signal_from_windows(&wa, &wb, r, &a, &b)?.s2;
            let oracle = s2_oracle_matter(&a, &b, r, &matter, ORACLE_TOL)?.s2_numeric;
            let deviation = (oracle - closed).abs();
            let bound = if closed == 0.0 {
                ZERO_FLOOR * tol
            } else {
                tol * closed.abs()
            };
            Ok(VerifyEntry {
                case,
                window_a: wa,
                window_b: wb,
                r,
                closed_form: closed,
                oracle,
                deviation,
                pass: deviation < bound,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyReport { entries })
}
