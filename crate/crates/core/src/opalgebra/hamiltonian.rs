use std::fmt;

use num_traits::Zero;

use super::coeff::{self, exact, rational, real};
use super::polynomial::{Monomial, OperatorPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianKind {
    /// `p̂²/2m`
    Free { mass: f64 },
    /// `p̂²/2m − F q̂`
    ConstantForce { mass: f64, force: f64 },
    /// `p̂²/2m + m ω² q̂²/2`
    Harmonic { mass: f64, omega: f64 },
    /// `p̂²/2m − m λ² q̂²/2`
    InvertedHarmonic { mass: f64, lambda: f64 },
    /// Arbitrary Hermitian polynomial in `q̂`, `p̂` (and `ħ`).
    Custom(OperatorPolynomial),
}

/// A validated Hamiltonian together with the value of `ħ` used whenever it
/// is evaluated numerically. Symbolic operations keep `ħ` as a grading.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSpec {
    kind: HamiltonianKind,
    hbar: f64,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must be positive, got {x}")))
    }
}

impl HamiltonianSpec {
    pub fn new(kind: HamiltonianKind, hbar: f64) -> Result<Self> {
        positive("hbar", hbar)?;
        match &kind {
            HamiltonianKind::Free { mass } => positive("mass", *mass)?,
            HamiltonianKind::ConstantForce { mass, force } => {
                positive("mass", *mass)?;
                if !force.is_finite() {
                    return Err(Error::param("force must be finite"));
                }
            }
            HamiltonianKind::Harmonic { mass, omega } => {
                positive("mass", *mass)?;
                positive("omega", *omega)?;
            }
            HamiltonianKind::InvertedHarmonic { mass, lambda } => {
                positive("mass", *mass)?;
                positive("lambda", *lambda)?;
            }
            HamiltonianKind::Custom(poly) => {
                if !poly.is_hermitian() {
                    return Err(Error::param(format!(
                        "custom Hamiltonian is not Hermitian: {poly}"
                    )));
                }
            }
        }
        Ok(Self { kind, hbar })
    }

    pub fn free(mass: f64, hbar: f64) -> Result<Self> {
        Self::new(HamiltonianKind::Free { mass }, hbar)
    }

    pub fn constant_force(mass: f64, force: f64, hbar: f64) -> Result<Self> {
        Self::new(HamiltonianKind::ConstantForce { mass, force }, hbar)
    }

    pub fn harmonic(mass: f64, omega: f64, hbar: f64) -> Result<Self> {
        Self::new(HamiltonianKind::Harmonic { mass, omega }, hbar)
    }

    pub fn inverted_harmonic(mass: f64, lambda: f64, hbar: f64) -> Result<Self> {
        Self::new(HamiltonianKind::InvertedHarmonic { mass, lambda }, hbar)
    }

    pub fn custom(poly: OperatorPolynomial, hbar: f64) -> Result<Self> {
        Self::new(HamiltonianKind::Custom(poly), hbar)
    }

    pub fn kind(&self) -> &HamiltonianKind {
        &self.kind
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> Option<f64> {
        match self.kind {
            HamiltonianKind::Free { mass }
            | HamiltonianKind::ConstantForce { mass, .. }
            | HamiltonianKind::Harmonic { mass, .. }
            | HamiltonianKind::InvertedHarmonic { mass, .. } => Some(mass),
            HamiltonianKind::Custom(_) => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            HamiltonianKind::Free { .. } => "free",
            HamiltonianKind::ConstantForce { .. } => "constant_force",
            HamiltonianKind::Harmonic { .. } => "harmonic",
            HamiltonianKind::InvertedHarmonic { .. } => "inverted_harmonic",
            HamiltonianKind::Custom(_) => "custom",
        }
    }

    /// Exact normal-ordered operator form.
    pub fn operator(&self) -> OperatorPolynomial {
        let kinetic = |mass: f64| {
            OperatorPolynomial::term(
                Monomial::new(0, 2, 0),
                real(rational(1, 2) / exact(mass)),
            )
        };
        let q_pow = |n: u32, c: num_rational::BigRational| {
            OperatorPolynomial::term(Monomial::new(n, 0, 0), real(c))
        };
        match &self.kind {
            HamiltonianKind::Free { mass } => kinetic(*mass),
            HamiltonianKind::ConstantForce { mass, force } => {
                kinetic(*mass) + q_pow(1, -exact(*force))
            }
            HamiltonianKind::Harmonic { mass, omega } => {
                let w = exact(*omega);
                kinetic(*mass) + q_pow(2, rational(1, 2) * exact(*mass) * &w * &w)
            }
            HamiltonianKind::InvertedHarmonic { mass, lambda } => {
                let l = exact(*lambda);
                kinetic(*mass) + q_pow(2, -(rational(1, 2) * exact(*mass) * &l * &l))
            }
            HamiltonianKind::Custom(poly) => poly.clone(),
        }
    }

    /// True when the operator has total degree ≤ 2 in `q̂`, `p̂`.
    pub fn is_quadratic(&self) -> bool {
        self.operator().degree() <= 2
    }

    /// Split `p̂²/2m + V(q̂)` into `(m, V)` when the Hamiltonian has that shape,
    /// with `V` given by its power-series coefficients `V(q) = Σ v_n qⁿ`.
    pub fn kinetic_plus_potential(&self) -> Option<(f64, Vec<f64>)> {
        let op = self.operator().substitute_hbar(&exact(self.hbar));
        let mut mass = None;
        let mut potential = Vec::new();
        for (m, c) in op.terms() {
            if !c.im.is_zero() {
                return None;
            }
            let value = coeff::to_f64(&c.re);
            match (m.q, m.p) {
                (0, 2) if value > 0.0 => mass = Some(0.5 / value),
                (n, 0) => {
                    let n = n as usize;
                    if potential.len() <= n {
                        potential.resize(n + 1, 0.0);
                    }
                    potential[n] = value;
                }
                _ => return None,
            }
        }
        mass.map(|m| (m, potential))
    }

    /// Potential energy `V(q)` for Hamiltonians of the form `p̂²/2m + V(q̂)`.
    pub fn potential(&self) -> Option<(f64, impl Fn(f64) -> f64)> {
        let (mass, coeffs) = self.kinetic_plus_potential()?;
        Some((mass, move |q: f64| {
            coeffs.iter().rev().fold(0.0, |acc, c| acc * q + c)
        }))
    }
}

impl fmt::Display for HamiltonianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            HamiltonianKind::Free { mass } => write!(f, "free(m={mass})"),
            HamiltonianKind::ConstantForce { mass, force } => {
                write!(f, "constant_force(m={mass}, F={force})")
            }
            HamiltonianKind::Harmonic { mass, omega } => {
                write!(f, "harmonic(m={mass}, omega={omega})")
            }
            HamiltonianKind::InvertedHarmonic { mass, lambda } => {
                write!(f, "inverted_harmonic(m={mass}, lambda={lambda})")
            }
            HamiltonianKind::Custom(poly) => write!(f, "custom({poly})"),
        }?;
        write!(f, ", hbar={}", self.hbar)
    }
}
