//! Real dilogarithm `Li₂(x) = −∫₀ˣ ln(1−t)/t dt` for `x ≤ 1`.

use std::f64::consts::PI;

use crate::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

/// `Li₂(x)` on `(−∞, 1]`.
///
/// The power series is only summed for `|x| ≤ 1/2`; other arguments are
/// mapped there by
///
/// * reflection `Li₂(x) = π²/6 − ln x ln(1−x) − Li₂(1−x)` on `(1/2, 1)`,
/// * Landen `Li₂(x) = −Li₂(x/(x−1)) − ½ ln²(1−x)` on `[−1, −1/2)`,
/// * inversion `Li₂(x) = −π²/6 − ½ ln²(−x) − Li₂(1/x)` below `−1`.
pub fn dilog(x: f64) -> Result<f64> {
    if x.is_nan() || x > 1.0 {
        return Err(Error::domain("dilog", x, "x <= 1"));
    }
    if x == 1.0 {
        return Ok(PI2_6);
    }
    if x == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(dilog_real(x))
}

fn dilog_real(x: f64) -> f64 {
    if x < -1.0 {
        let l = (-x).ln();
        -PI2_6 - 0.5 * l * l - dilog_real(1.0 / x)
    } else if x < -0.5 {
        let l = (-x).ln_1p();
        -series(x / (x - 1.0)) - 0.5 * l * l
    } else if x <= 0.5 {
        series(x)
    } else {
        PI2_6 - x.ln() * (-x).ln_1p() - series(1.0 - x)
    }
}

/// `Σ_{k≥1} x^k / k²` for `|x| ≤ 1/2`.
fn series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut pow = 1.0;
    for k in 1..200u32 {
        pow *= x;
        let term = pow / f64::from(k * k);
        sum += term;
        if term.abs() <= 0.5 * f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}
