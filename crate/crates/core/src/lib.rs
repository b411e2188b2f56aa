//! Numerical core for a photonic cavity divided by a quantum-controlled mirror.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`specfun`]: complex digamma, Gauss hypergeometric function, `sinc` and
//!   adaptive Gauss–Kronrod quadrature.
//! - [`modes`]: Bogoliubov coefficients of a suddenly divided cavity, sub-cavity
//!   photon content and the vacuum frequency shift.
//! - [`dynamics`]: control-qubit transition probabilities (perturbative, Rabi and
//!   a truncated-Fock reference solver) and the cavity intensity readout.
//! - [`switching`]: smooth switching of an imperfect mirror and the resulting
//!   Bogoliubov coefficients.
//!
//! Everything works in natural units (`c = 1`). Frequencies are angular.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
mod error;
pub mod modes;
pub mod specfun;
pub mod sweep;
pub mod switching;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use sweep::{ParamValue, SweepResult};

/// Complex value used throughout the crate.
pub type ComplexValue = Complex64;
