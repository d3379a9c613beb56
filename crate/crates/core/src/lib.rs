//! Algebraic coherent states for the Morse and Pöschl-Teller families.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: log-gamma, Pochhammer symbols, classical orthogonal
//!   polynomials, terminating hypergeometric sums and Bessel functions.
//! - [`quadrature`]: Gauss-Legendre and generalised Gauss-Laguerre rules.
//! - [`opalgebra`]: polynomials over `Complex64` and linear operators built
//!   from `x`, `d/dx` and rational functions of the Euler operator `D = x d/dx`.
//! - [`potentials`]: orthonormal eigenbases of the Morse, symmetric
//!   Pöschl-Teller and Pöschl-Teller problems.
//! - [`coherent`]: coherent-state coefficient sequences with series and
//!   closed-form evaluators.
//! - [`dynamics`]: time evolution, autocorrelation, revival detection and
//!   quantum-carpet grids.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod coherent;
pub mod dynamics;
pub mod error;
pub mod opalgebra;
pub mod potentials;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64;
