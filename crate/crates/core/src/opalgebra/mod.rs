//! Exact algebra of polynomials in the canonical operators `q̂`, `p̂` and `ħ`.

mod apply;
mod classical;
mod coeff;
mod hamiltonian;
mod polynomial;
mod quantize;
mod series;
mod similarity;
mod word;

pub use apply::apply_operator_polynomial;
pub use classical::{
    classical_flow, poisson_bracket, poisson_series, ClassicalFlow, ClassicalPolynomial, Component,
    FlowForm, FlowSource, FlowTerm, TimeFunction, TimeShape,
};
pub use coeff::Coeff;
pub use hamiltonian::{HamiltonianKind, HamiltonianSpec};
pub use polynomial::{commutator, Monomial, OperatorPolynomial};
pub use quantize::{quantize, quantize_flow, weyl_quantize, QuantizationOrdering};
pub use series::{
    heisenberg_derivative, heisenberg_series, heisenberg_series_with_limits, AlgebraLimits,
    TimeSeriesOperator,
};
pub use similarity::gaussian_similarity;
pub use word::{normal_order, Letter, OperatorWord};

/// Helpers for building exact complex-rational coefficients.
pub mod coefficients {
    pub use super::coeff::{
        binomial, c_int, c_one, exact, factorial, from_c64, i_pow, imag, int, is_real,
        odd_double_factorial, pow, rational, rational_pow, real, render, to_c64, to_f64,
    };
}
