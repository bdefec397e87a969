//! Independent numerical references: split-step propagation, kernels from
//! a dense eigenbasis, Schrödinger residuals and a brute-force polynomial
//! evolver.

mod potential;
mod recursive;
mod residual;
mod spectrum;
mod split_step;

pub use potential::PotentialGrid;
pub use recursive::{recursive_polynomial_oracle, MAX_RECURSIVE_ORDER};
pub use residual::{schrodinger_residual, Stencil, TimeSamples, RESIDUAL_DT};
pub use spectrum::{
    kernel_from_spectrum, retained_for_tolerance, SpectralDecomposition, SpectralKernel,
};
pub use split_step::split_step_evolve;
