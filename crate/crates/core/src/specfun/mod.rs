//! Numerical substrate: Bessel functions of real order, the real
//! dilogarithm, adaptive Gauss–Kronrod quadrature and oscillatory tails.

mod bessel;
mod dilog;
mod oscillatory;
mod quad;

pub use bessel::{bessel_j, bessel_jy, bessel_y, BesselJY};
pub use dilog::dilog;
pub use oscillatory::{oscillatory_tail_quad, oscillatory_tail_quad_with};
pub use quad::{adaptive_quad, adaptive_quad_with, GaussLegendre, QuadOptions, QuadResult};
