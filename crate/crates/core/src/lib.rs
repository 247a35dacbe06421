//! Leading-order signalling between two comoving, pointlike, zero-gap
//! Unruh-DeWitt detectors coupled to a massless, minimally coupled scalar
//! field in a spatially flat FRW universe with scale factor
//! `a(η) = (η/η★)^(α+1/2)`.
//!
//! The crate is layered bottom-up:
//!
//! * [`cosmo`]: background, `w ↔ α`, comoving/conformal time maps.
//! * [`specfun`]: real-order Bessel functions, the real dilogarithm and
//!   the quadrature routines everything else is built on.
//! * [`commutator`]: the field commutator, both the Bessel mode kernel for
//!   general `α` and the closed form available in a matter-dominated
//!   universe (`α = 3/2`).
//! * [`signalling`]: closed-form signalling estimator and channel capacity
//!   for `α = 3/2`.
//! * [`oracle`]: brute-force evaluations used to validate the closed forms
//!   and to reach `α ≠ 3/2`.

pub mod commutator;
pub mod cosmo;
mod error;
pub mod oracle;
pub mod signalling;
pub mod specfun;

pub use error::{Error, Result};
