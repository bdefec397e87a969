use num_rational::BigRational;
use num_traits::One;

use super::classical::ClassicalPolynomial;
use super::coeff::{self, Coeff};
use super::hamiltonian::HamiltonianSpec;
use super::polynomial::{commutator, OperatorPolynomial};
use crate::error::{Error, Result};

/// Guards for operations whose output degree grows with each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraLimits {
    pub max_degree: u32,
}

impl Default for AlgebraLimits {
    fn default() -> Self {
        Self { max_degree: 32 }
    }
}

impl AlgebraLimits {
    pub fn check(&self, poly: &OperatorPolynomial) -> Result<()> {
        let degree = poly.degree();
        if degree > self.max_degree {
            Err(Error::DegreeLimit {
                degree,
                limit: self.max_degree,
            })
        } else {
            Ok(())
        }
    }
}

/// Taylor coefficients of a Heisenberg-picture operator:
/// `Â(t) = Σ_n tⁿ/n! · coefficients[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesOperator {
    coefficients: Vec<OperatorPolynomial>,
}

impl TimeSeriesOperator {
    pub fn new(coefficients: Vec<OperatorPolynomial>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::param("a time series needs at least the seed term"));
        }
        Ok(Self { coefficients })
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[OperatorPolynomial] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> &OperatorPolynomial {
        &self.coefficients[n]
    }

    pub fn seed(&self) -> &OperatorPolynomial {
        &self.coefficients[0]
    }

    /// True when no coefficient carries a power of `ħ`.
    pub fn is_hbar_free(&self) -> bool {
        self.coefficients
            .iter()
            .all(|c| c.terms().all(|(m, _)| m.hbar == 0))
    }

    /// Index of the last nonzero coefficient.
    pub fn terminates_at(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// `Σ_n tⁿ/n! · coefficients[n]` at an exact time.
    pub fn evaluate_at(&self, t: &BigRational) -> OperatorPolynomial {
        let mut out = OperatorPolynomial::zero();
        let mut weight = BigRational::one();
        for (n, c) in self.coefficients.iter().enumerate() {
            if n > 0 {
                weight = weight * t / BigRational::from_integer((n as i64).into());
            }
            out = out + c.scale(&coeff::real(weight.clone()));
        }
        out
    }

    /// Coefficients with every `ħ`-carrying term dropped, read as commuting
    /// polynomials in `(q, p)`.
    pub fn classical_limit(&self) -> Result<Vec<ClassicalPolynomial>> {
        self.coefficients
            .iter()
            .map(|c| Ok(ClassicalPolynomial::from_normal_ordered(&c.classical_part()?)))
            .collect()
    }
}

/// `dÂ/dt = (1/iħ)[Â, Ĥ]`, normal-ordered.
pub fn heisenberg_derivative(
    a: &OperatorPolynomial,
    h: &HamiltonianSpec,
) -> Result<OperatorPolynomial> {
    Ok(derivative_with(a, &h.operator()))
}

fn derivative_with(a: &OperatorPolynomial, h: &OperatorPolynomial) -> OperatorPolynomial {
    // 1/i = −i, and one power of ħ comes off
    let minus_i: Coeff = coeff::i_pow(-1);
    commutator(a, h).shift_hbar(-1).scale(&minus_i)
}

pub fn heisenberg_series(
    seed: &OperatorPolynomial,
    h: &HamiltonianSpec,
    order: usize,
) -> Result<TimeSeriesOperator> {
    heisenberg_series_with_limits(seed, h, order, AlgebraLimits::default())
}

pub fn heisenberg_series_with_limits(
    seed: &OperatorPolynomial,
    h: &HamiltonianSpec,
    order: usize,
    limits: AlgebraLimits,
) -> Result<TimeSeriesOperator> {
    let hamiltonian = h.operator();
    limits.check(seed)?;
    let mut coefficients = Vec::with_capacity(order + 1);
    coefficients.push(seed.clone());
    for n in 0..order {
        let next = derivative_with(&coefficients[n], &hamiltonian);
        limits.check(&next)?;
        coefficients.push(next);
    }
    TimeSeriesOperator::new(coefficients)
}
