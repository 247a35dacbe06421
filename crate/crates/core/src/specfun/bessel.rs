//! Bessel functions of the first and second kind, `J_ν(x)` and `Y_ν(x)`, for
//! real order and positive real argument.
//!
//! Three regimes, all evaluated for `ν ≥ 0` and mapped to negative order by
//! the reflection formulas:
//!
//! * `x < 2`: Temme's series for `Y_μ, Y_{μ+1}` at the reduced order
//!   `|μ| ≤ 1/2`, with `J` fixed by the Wronskian.
//! * `2 ≤ x < 30 + ν²/2`: Steed's method, the continued fraction for
//!   `J'_ν/J_ν` combined with the complex continued fraction for
//!   `(J'_μ + iY'_μ)/(J_μ + iY_μ)`.
//! * larger `x`: Hankel's asymptotic expansion, which at that crossover is
//!   accurate to a few ulp for the orders used here.
//!
//! Orders are recurred between `μ` and `ν` (downwards for `J`, upwards for
//! `Y`), so the cost grows with `ν`; intended orders are `|ν| ≲ 12`.

use std::f64::consts::PI;

use crate::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const TEMME_XMAX: f64 = 2.0;

/// `J_ν(x)`, `Y_ν(x)` and their first `x`-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselJY {
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
}

impl BesselJY {
    /// `J_{ν−1}(x)` from `J_{ν−1} = J'_ν + (ν/x) J_ν`.
    pub fn j_lower(&self, order: f64, x: f64) -> f64 {
        self.jp + order / x * self.j
    }

    /// `J_{ν+1}(x)` from `J_{ν+1} = (ν/x) J_ν − J'_ν`.
    pub fn j_upper(&self, order: f64, x: f64) -> f64 {
        order / x * self.j - self.jp
    }

    pub fn y_lower(&self, order: f64, x: f64) -> f64 {
        self.yp + order / x * self.y
    }

    pub fn y_upper(&self, order: f64, x: f64) -> f64 {
        order / x * self.y - self.yp
    }
}

pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(order, x)?.j)
}

pub fn bessel_y(order: f64, x: f64) -> Result<f64> {
    Ok(bessel_jy(order, x)?.y)
}

/// Joint evaluation of `J_ν, Y_ν, J'_ν, Y'_ν` at `x > 0`.
pub fn bessel_jy(order: f64, x: f64) -> Result<BesselJY> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("bessel", x, "0 < x < inf"));
    }
    if !order.is_finite() {
        return Err(Error::domain("bessel", order, "finite order"));
    }
    if order >= 0.0 {
        return Ok(jy_nonnegative(order, x));
    }
    // J_{-ν} = cos(νπ) J_ν − sin(νπ) Y_ν,  Y_{-ν} = sin(νπ) J_ν + cos(νπ) Y_ν
    let nu = -order;
    let p = jy_nonnegative(nu, x);
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    Ok(BesselJY {
        j: c * p.j - s * p.y,
        y: s * p.j + c * p.y,
        jp: c * p.jp - s * p.yp,
        yp: s * p.jp + c * p.yp,
    })
}

/// `sin(πx)`, exact at integers and half-integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r ∈ [-1, 1]; fold onto [-1/2, 1/2] with sin(πr) = sin(π(1 − r)).
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    if r == 0.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else if r == -0.5 {
        -1.0
    } else {
        (PI * r).sin()
    }
}

/// `cos(πx)`, exact at integers and half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn asymptotic_threshold(nu: f64) -> f64 {
    30.0 + 0.5 * nu * nu
}

fn jy_nonnegative(nu: f64, x: f64) -> BesselJY {
    if x >= asymptotic_threshold(nu + 1.0) {
        let (j, y) = hankel(nu, x);
        let (j1, y1) = hankel(nu + 1.0, x);
        BesselJY {
            j,
            y,
            jp: nu / x * j - j1,
            yp: nu / x * y - y1,
        }
    } else {
        steed_temme(nu, x)
    }
}

/// Hankel's expansion `J = √(2/πx)(P cos χ − Q sin χ)`,
/// `Y = √(2/πx)(P sin χ + Q cos χ)`, `χ = x − (ν/2 + 1/4)π`.
fn hankel(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    let mut shrinking = false;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term == 0.0 {
            break;
        }
        let mag = term.abs();
        if shrinking && mag > prev {
            break;
        }
        if mag < prev {
            shrinking = true;
        }
        prev = mag;
        // Terms alternate in sign pairwise: a1/x → Q, a2/x² → -P, a3/x³ → -Q, ...
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if mag < EPS * 1e-2 {
            break;
        }
    }
    // χ = x − φ with φ = (ν/2 + 1/4)π; expand to avoid forming x − φ.
    let (sx, cx) = x.sin_cos();
    let phase = 0.5 * nu + 0.25;
    let (sp, cp) = (sin_pi(phase), cos_pi(phase));
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (2.0 / (PI * x)).sqrt();
    (
        amp * (p * cos_chi - q * sin_chi),
        amp * (p * sin_chi + q * cos_chi),
    )
}

/// Taylor coefficients of `1/Γ(z)` about `z = 0`; `COEF[k]` multiplies `z^{k+1}`.
const RGAMMA_COEF: [f64; 26] = [
    1.0,
    0.5772156649015329,
    -0.6558780715202539,
    -0.04200263503409524,
    0.16653861138229148,
    -0.04219773455554433,
    -0.009621971527876973,
    0.0072189432466631,
    -0.0011651675918590652,
    -0.00021524167411495098,
    0.0001280502823881162,
    -2.013485478078824e-05,
    -1.2504934821426706e-06,
    1.133027231981696e-06,
    -2.056338416977607e-07,
    6.116095104481416e-09,
    5.002007644469223e-09,
    -1.18127457048702e-09,
    1.0434267116911005e-10,
    7.782263439905071e-12,
    -3.696805618642206e-12,
    5.100370287454476e-13,
    -2.0583260535665066e-14,
    -5.348122539423018e-15,
    1.2267786282382608e-15,
    -1.1812593016974588e-16,
];

/// Temme's auxiliary functions for `|μ| ≤ 1/2`:
/// `γ1 = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ)`, `γ2 = (1/Γ(1−μ) + 1/Γ(1+μ))/2`,
/// plus `1/Γ(1+μ)` and `1/Γ(1−μ)`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Γ(1+μ) = Σ c_k μ^{k-1}; split into even and odd powers of μ.
    let m2 = mu * mu;
    let mut even = 0.0; // Σ_{k odd} c_k μ^{k-1}
    let mut odd = 0.0; // Σ_{k even} c_k μ^{k-2}
    for (i, c) in RGAMMA_COEF.iter().enumerate().rev() {
        if i % 2 == 0 {
            even = even * m2 + c;
        } else {
            odd = odd * m2 + c;
        }
    }
    let gam1 = -odd;
    let gam2 = even;
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;
    (gam1, gam2, gampl, gammi)
}

/// Steed's method (`x ≥ 2`) or Temme's series (`x < 2`) for `ν ≥ 0`.
fn steed_temme(xnu: f64, x: f64) -> BesselJY {
    let nl = if x < TEMME_XMAX {
        (xnu + 0.5).floor() as usize
    } else {
        (xnu - x + 1.5).floor().max(0.0) as usize
    };
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: f_ν = J'_ν/J_ν by the modified Lentz method.
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }

    // Downward recurrence of the unnormalized J from ν to μ.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < TEMME_XMAX {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS {
            1.0
        } else {
            pimu / pimu.sin()
        };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS {
            1.0
        } else {
            pimu2.sin() / pimu2
        };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                break;
            }
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq = (J'_μ + iY'_μ)/(J_μ + iY_μ).
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        for i in 1..MAXIT {
            a += 2.0 * i as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                break;
            }
        }
        let gam = (p - f) / q;
        let mag = (w / ((p - f) * gam + q)).sqrt();
        rjmu = mag.copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    BesselJY {
        j,
        y: rymu,
        jp,
        yp: xnu * xi * rymu - ry1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    /// Ascending series `J_ν(x) = Σ (−1)^m (x/2)^{2m+ν} / (m! Γ(m+ν+1))`,
    /// with Γ built from the half-integer recurrence so the oracle shares no
    /// code with the implementation.
    fn j_series_half_integer(nu: f64, x: f64, terms: usize) -> f64 {
        // Γ(z) for z a (possibly negative) half-integer or positive integer.
        fn gamma_half(z: f64) -> f64 {
            if z < 0.5 {
                return gamma_half(z + 1.0) / z;
            }
            if (z - z.round()).abs() < 1e-12 {
                (1..z.round() as u64).map(|k| k as f64).product()
            } else {
                let mut g = PI.sqrt();
                let mut t = 0.5;
                while t < z - 0.25 {
                    g *= t;
                    t += 1.0;
                }
                g
            }
        }
        let half = 0.5 * x;
        let mut sum = 0.0;
        let mut fact = 1.0;
        for m in 0..terms {
            if m > 0 {
                fact *= m as f64;
            }
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * half.powf(2.0 * m as f64 + nu) / (fact * gamma_half(m as f64 + nu + 1.0));
        }
        sum
    }

    #[test]
    fn half_order_examples() {
        let v = bessel_j(0.5, PI / 2.0).unwrap();
        assert!(rel(v, 2.0 / PI) < 1e-14, "{v}");
        let v = bessel_y(0.5, PI).unwrap();
        assert!(rel(v, 2f64.sqrt() / PI) < 1e-14, "{v}");
        let v = bessel_y(0.5, PI / 2.0).unwrap();
        assert!(v.abs() < 1e-15, "{v}");
    }

    #[test]
    fn small_argument_limit() {
        assert!((bessel_j(0.0, 1e-10).unwrap() - 1.0).abs() < 1e-15);
        assert!((bessel_j(0.0, 1e-300).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn three_halves_against_series() {
        let oracle = j_series_half_integer(1.5, 1.0, 30);
        let v = bessel_j(1.5, 1.0).unwrap();
        assert!(rel(v, oracle) < 1e-13, "{v} vs {oracle}");
    }

    #[test]
    fn three_halves_y_from_connection_formula() {
        let (nu, x) = (1.5, 2.0);
        let (s, c) = ((nu * PI).sin(), (nu * PI).cos());
        let oracle = (j_series_half_integer(nu, x, 40) * c - j_series_half_integer(-nu, x, 40)) / s;
        let v = bessel_y(nu, x).unwrap();
        assert!(rel(v, oracle) < 1e-13, "{v} vs {oracle}");
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j(1.0, 0.0).is_err());
        assert!(bessel_y(1.0, -1.0).is_err());
        assert!(bessel_jy(f64::NAN, 1.0).is_err());
        assert!(bessel_jy(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn sin_cos_pi_exact_points() {
        assert_eq!(sin_pi(1.0), 0.0);
        assert_eq!(sin_pi(-3.0), 0.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert_eq!(cos_pi(1.5), 0.0);
        assert_eq!(cos_pi(2.0), 1.0);
        assert!((sin_pi(0.3) - (0.3 * PI).sin()).abs() < 1e-16);
    }

    #[test]
    fn negative_integer_order_reflection() {
        for x in [0.01, 0.7, 3.0, 45.0] {
            let p = bessel_j(1.0, x).unwrap();
            let m = bessel_j(-1.0, x).unwrap();
            assert!(rel(m, -p) < 1e-15);
            let p = bessel_y(2.0, x).unwrap();
            let m = bessel_y(-2.0, x).unwrap();
            assert!(rel(m, p) < 1e-15);
        }
    }
}
