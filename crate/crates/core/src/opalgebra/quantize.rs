use num_rational::BigRational;
use num_traits::One;

use super::classical::{ClassicalFlow, ClassicalPolynomial, Component};
use super::coeff::{self, real, Coeff};
use super::polynomial::{Monomial, OperatorPolynomial};
use super::series::TimeSeriesOperator;
use crate::error::Result;

/// How a commuting monomial `q^a p^b` is turned into an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuantizationOrdering {
    /// Average over all distinct orderings of the `a` `q̂`'s and `b` `p̂`'s.
    #[default]
    Weyl,
    /// `q̂^a p̂^b`.
    Standard,
    /// `p̂^b q̂^a`.
    AntiStandard,
}

fn q_pow(a: u32) -> OperatorPolynomial {
    OperatorPolynomial::term(Monomial::new(a, 0, 0), Coeff::one())
}

fn p_pow(b: u32) -> OperatorPolynomial {
    OperatorPolynomial::term(Monomial::new(0, b, 0), Coeff::one())
}

/// Weyl-symmetrised `q^a p^b`, via `2^{−a} Σ_k C(a,k) q̂^k p̂^b q̂^{a−k}`.
fn weyl_monomial(a: u32, b: u32) -> OperatorPolynomial {
    let mut out = OperatorPolynomial::zero();
    let inner = p_pow(b);
    for k in 0..=a {
        let w = BigRational::from_integer(coeff::binomial(a, k));
        out = out + q_pow(k).product(&inner).product(&q_pow(a - k)).scale(&real(w));
    }
    let denom = BigRational::from_integer(num_bigint::BigInt::one() << a);
    out.scale(&real(denom.recip()))
}

pub fn quantize(poly: &ClassicalPolynomial, ordering: QuantizationOrdering) -> OperatorPolynomial {
    let mut out = OperatorPolynomial::zero();
    for (&(a, b), c) in poly.terms() {
        let op = match ordering {
            QuantizationOrdering::Weyl => weyl_monomial(a, b),
            QuantizationOrdering::Standard => OperatorPolynomial::term(Monomial::new(a, b, 0), Coeff::one()),
            QuantizationOrdering::AntiStandard => p_pow(b).product(&q_pow(a)),
        };
        out = out + op.scale(c);
    }
    out
}

pub fn weyl_quantize(poly: &ClassicalPolynomial) -> OperatorPolynomial {
    quantize(poly, QuantizationOrdering::Weyl)
}

/// Quantize each Taylor coefficient of one component of a classical flow.
pub fn quantize_flow(
    flow: &ClassicalFlow,
    component: Component,
    order: usize,
    ordering: QuantizationOrdering,
) -> Result<TimeSeriesOperator> {
    let coefficients = (0..=order)
        .map(|n| quantize(&flow.taylor_coefficient(component, n), ordering))
        .collect();
    TimeSeriesOperator::new(coefficients)
}
