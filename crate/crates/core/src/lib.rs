//! Operator-method time evolution of one-dimensional wavefunctions.
//!
//! The crate is split into four layers:
//!
//! * [`wavefield`]: uniform grids, wavefunctions, unitary Fourier transforms
//!   and observables.
//! * [`opalgebra`]: exact algebra of polynomials in `q̂`, `p̂` and `ħ`,
//!   Heisenberg series, classical flows and Weyl quantization.
//! * [`propagators`]: closed-form kernels and evolutions for the free,
//!   constant-force and harmonic Hamiltonians, plus truncated operator-series
//!   evolution.
//! * [`oracle`]: independent numerical ground truth (split-step integrator,
//!   spectral kernels, Schrödinger residuals, brute-force polynomial evolver).

pub mod error;
pub mod opalgebra;
pub mod oracle;
pub mod propagators;
pub mod wavefield;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
