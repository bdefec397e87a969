use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::opalgebra::coefficients::{binomial, odd_double_factorial, pow, real};
use crate::opalgebra::Coeff;
use crate::wavefield::{Grid1D, PlateauWindow, WaveFunction};
use crate::C64;

/// Polynomial wavefunction `Σ coefficients[n]·qⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialState {
    coefficients: Vec<C64>,
    hbar: f64,
    mass: f64,
}

impl PolynomialState {
    pub fn new(coefficients: Vec<C64>, hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::param(format!("hbar must be positive, got {hbar}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::param(format!("mass must be positive, got {mass}")));
        }
        if coefficients.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Numerical("non-finite polynomial coefficient".into()));
        }
        let mut out = Self {
            coefficients,
            hbar,
            mass,
        };
        out.trim();
        Ok(out)
    }

    pub fn monomial(n: usize, hbar: f64, mass: f64) -> Result<Self> {
        let mut c = vec![C64::new(0.0, 0.0); n + 1];
        c[n] = C64::new(1.0, 0.0);
        Self::new(c, hbar, mass)
    }

    fn trim(&mut self) {
        while self.coefficients.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            self.coefficients.pop();
        }
    }

    pub fn coefficients(&self) -> &[C64] {
        &self.coefficients
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn evaluate(&self, q: f64) -> C64 {
        horner(&self.coefficients, C64::new(q, 0.0))
    }

    /// `P(q − s)` re-expanded in powers of `q`.
    pub fn shifted(&self, s: f64) -> Self {
        Self {
            coefficients: shift_coefficients(&self.coefficients, -s),
            hbar: self.hbar,
            mass: self.mass,
        }
    }

    /// Grid state `window(q)·P(q)`.
    pub fn windowed(&self, grid: &Grid1D, window: &PlateauWindow) -> Result<WaveFunction> {
        WaveFunction::from_fn(grid, self.hbar, |q| self.evaluate(q) * window.value(q))
    }
}

pub(crate) fn horner(coefficients: &[C64], x: C64) -> C64 {
    coefficients
        .iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
}

// coefficients of P(q + d)
pub(crate) fn shift_coefficients(coefficients: &[C64], d: f64) -> Vec<C64> {
    let n = coefficients.len();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for (j, c) in coefficients.iter().enumerate() {
        // (q + d)^j = Σ_l C(j,l) d^{j−l} q^l
        let mut binom = 1.0;
        for l in (0..=j).rev() {
            out[l] += c * binom * d.powi((j - l) as i32);
            binom = binom * l as f64 / (j - l + 1) as f64;
        }
    }
    out
}

/// Polynomial with exact complex-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    coefficients: Vec<Coeff>,
}

impl ExactPolynomial {
    pub fn new(mut coefficients: Vec<Coeff>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[Coeff] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> Coeff {
        self.coefficients.get(n).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn to_state(&self, hbar: f64, mass: f64) -> Result<PolynomialState> {
        let c = self
            .coefficients
            .iter()
            .map(crate::opalgebra::coefficients::to_c64)
            .collect();
        PolynomialState::new(c, hbar, mass)
    }
}

/// Integer weights of `(q + c·d/dq)ⁿ·1`: the coefficient of `q^l` is
/// `weight·c^{(n−l)/2}` for `n − l` even, with weight `C(n,l)·(n−l−1)!!`.
/// Returns `(l, (n − l)/2, weight)`.
fn free_polynomial_weights(n: u32) -> impl Iterator<Item = (u32, u32, BigInt)> {
    (n % 2..=n).step_by(2).map(move |l| {
        let j = (n - l) / 2;
        (l, j, binomial(n, l) * odd_double_factorial(j))
    })
}

/// Free-space polynomial `(q + c·d/dq)ⁿ·1` with exact coefficients.
pub fn free_polynomial_exact(n: u32, c: &Coeff) -> ExactPolynomial {
    let mut coefficients = vec![Coeff::zero(); n as usize + 1];
    for (l, j, weight) in free_polynomial_weights(n) {
        coefficients[l as usize] = real(weight.into()) * pow(c, j);
    }
    ExactPolynomial::new(coefficients)
}

/// Coefficients of `(q + c·d/dq)ⁿ·1` for a numeric `c`.
pub(crate) fn free_polynomial_coefficients(n: u32, c: C64) -> Vec<C64> {
    let mut coefficients = vec![C64::new(0.0, 0.0); n as usize + 1];
    for (l, j, weight) in free_polynomial_weights(n) {
        let w = weight.to_f64().unwrap_or(f64::INFINITY);
        coefficients[l as usize] = c.powu(j) * w;
    }
    coefficients
}

/// `e^{ln_scale}·(q + c·d/dq)ⁿ·1` for large `n`, built upward from the lowest
/// power with magnitudes tracked in logarithms so that neither the integer
/// weights nor the scale overflow on their own.
pub(crate) fn scaled_free_polynomial_coefficients(n: u32, c: C64, ln_scale: f64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n as usize + 1];
    if c == C64::new(0.0, 0.0) {
        out[n as usize] = C64::new(ln_scale.exp(), 0.0);
        return out;
    }
    let l0 = n % 2;
    let j0 = (n - l0) / 2;
    // ln C(n, l0) + ln (2j0 − 1)!!; C(n, 1) = n, C(n, 0) = 1
    let ln_weight = if l0 == 1 { (n as f64).ln() } else { 0.0 }
        + (1..=j0).map(|i| (2.0 * i as f64 - 1.0).ln()).sum::<f64>();
    let ln_mag = ln_weight + j0 as f64 * c.norm().ln() + ln_scale;
    let mut value = C64::from_polar(ln_mag.exp(), j0 as f64 * c.arg());
    out[l0 as usize] = value;
    // coefficient(l) = coefficient(l − 2)·(n − l + 2)/(c·l·(l − 1))
    let mut l = l0 + 2;
    while l <= n {
        value = value * (n - l + 2) as f64 / (c * (l as f64) * ((l - 1) as f64));
        out[l as usize] = value;
        l += 2;
    }
    out
}

/// Free evolution of `qⁿ` over time `t`: `(q + (iħt/m)·d/dq)ⁿ·1`.
pub fn free_polynomial(n: u32, t: f64, mass: f64, hbar: f64) -> Result<PolynomialState> {
    let c = C64::new(0.0, hbar * t / mass);
    PolynomialState::new(free_polynomial_coefficients(n, c), hbar, mass)
}
