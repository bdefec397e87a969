//! Closed-form evolutions: kernels, dispersion, free-space polynomials,
//! constant-force and harmonic propagation, and truncated operator series.

mod dispersion;
mod evolution;
mod fourier;
mod kernel;
mod operator_series;
mod polynomial;
mod polynomial_evolution;

pub use dispersion::{
    evolve_free_fourier, evolve_free_fourier_with, group_velocity, DispersionRelation, RestPhase,
};
pub use evolution::{Evolution, Warning, LEAK_WARNING_LIMIT};
pub use fourier::{evolve_constant_force_fourier, evolve_harmonic_fourier};
pub use kernel::{ho_parameters, kernel_equivalence_free, make_kernel, KernelForm};
pub use operator_series::{
    evolve_by_operator_series, evolve_polynomial_by_operator_series, PolynomialSeriesEvolution,
};
pub use polynomial::{free_polynomial, free_polynomial_exact, ExactPolynomial, PolynomialState};
pub use polynomial_evolution::{
    evolve_polynomial_state, Envelope, HarmonicTruncation, PolynomialEvolution, TruncationReport,
};
