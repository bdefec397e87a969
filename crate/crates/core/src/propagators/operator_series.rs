use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_rational::BigRational;

use super::evolution::{Evolution, Warning};
use super::polynomial::{horner, PolynomialState};
use crate::error::{Error, Result};
use crate::opalgebra::coefficients::{exact, from_c64, imag, real};
use crate::opalgebra::{heisenberg_series, HamiltonianSpec, OperatorPolynomial};
use crate::wavefield::{Representation, SpectralTransform, WaveFunction};
use crate::C64;

/// Polynomial result of a truncated operator-series evolution.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSeriesEvolution {
    pub polynomial: PolynomialState,
    pub warnings: Vec<Warning>,
}

/// `Σ_{n≤N} (−iĤt/ħ)ⁿ/n!` with `ħ` kept symbolic.
fn kernel_series(h: &HamiltonianSpec, t: &BigRational, order: usize) -> Vec<OperatorPolynomial> {
    let step = h.operator().scale(&imag(-t.clone())).shift_hbar(-1);
    let mut terms = vec![OperatorPolynomial::one()];
    for n in 1..=order {
        let next = terms[n - 1]
            .product(&step)
            .scale(&real(BigRational::new(1.into(), (n as i64).into())));
        terms.push(next);
    }
    terms
}

// Coefficients in q of an operator polynomial that has no p̂ left.
fn q_coefficients(poly: &OperatorPolynomial, hbar: f64) -> Vec<C64> {
    let terms = poly.numeric_terms(hbar);
    let degree = terms.keys().map(|&(a, _)| a as usize).max().unwrap_or(0);
    let mut out = vec![C64::new(0.0, 0.0); degree + 1];
    for ((a, b), c) in terms {
        debug_assert_eq!(b, 0);
        out[a as usize] += c;
    }
    out
}

/// Heisenberg position at `−t` truncated at `order`, and the truncated
/// kernel terms acting on the unit function, one per order.
fn series_parts(
    h: &HamiltonianSpec,
    t: f64,
    order: usize,
) -> Result<(OperatorPolynomial, Vec<OperatorPolynomial>)> {
    if !t.is_finite() {
        return Err(Error::param(format!("time must be finite, got {t}")));
    }
    let t_exact = exact(t);
    let position = heisenberg_series(&OperatorPolynomial::q(), h, order)?.evaluate_at(&-t_exact.clone());
    let kernel = kernel_series(h, &t_exact, order)
        .into_iter()
        .map(|k| k.acting_on_unity())
        .collect();
    Ok((position, kernel))
}

fn divergence_warning(term_sizes: &[f64]) -> Option<Warning> {
    let n = term_sizes.len();
    if n < 3 {
        return None;
    }
    let (prev, last) = (term_sizes[n - 2], term_sizes[n - 1]);
    if prev > 0.0 && last >= prev {
        Some(Warning::SeriesDivergence {
            order: n - 1,
            growth: last / prev,
        })
    } else {
        None
    }
}

/// Evolve a polynomial wavefunction by `ψ(q̂(−t))·K_N(q̂, t)·1`, with both
/// the Heisenberg position and the kernel truncated at `order`. All operator
/// algebra is exact; `ħ` and the coefficients are evaluated at the end.
pub fn evolve_polynomial_by_operator_series(
    p: &PolynomialState,
    h: &HamiltonianSpec,
    t: f64,
    order: usize,
) -> Result<PolynomialSeriesEvolution> {
    let hbar = h.hbar();
    let (position, kernel_terms) = series_parts(h, t, order)?;
    let mut kernel = OperatorPolynomial::zero();
    for k in &kernel_terms {
        kernel = kernel + k.clone();
    }
    let mut composed = OperatorPolynomial::zero();
    let mut power = OperatorPolynomial::one();
    for (n, a) in p.coefficients().iter().enumerate() {
        if n > 0 {
            power = power.product(&position);
        }
        if *a != C64::new(0.0, 0.0) {
            composed = composed + power.scale(&from_c64(*a));
        }
    }
    let result = composed.product(&kernel).acting_on_unity();

    let sizes: Vec<f64> = kernel_terms
        .iter()
        .map(|k| q_coefficients(k, hbar).iter().map(|c| c.norm()).sum())
        .collect();
    Ok(PolynomialSeriesEvolution {
        polynomial: PolynomialState::new(q_coefficients(&result, hbar), hbar, p.mass())?,
        warnings: divergence_warning(&sizes).into_iter().collect(),
    })
}

/// Evolve a grid state by the truncated operator series.
///
/// Requires the truncated Heisenberg position at `−t` to be affine,
/// `X = a·q̂ + b·p̂ + c` (true for every quadratic Hamiltonian). Writing
/// `ψ(X) = ∫dk/√(2π)·A(k)·e^{ikX}` and splitting the exponential gives
/// `(ψ(X)g)(q) = Σ_k dk/√(2π)·A(k)·e^{ik(aq + c)}·e^{iħk²ab/2}·g(q + ħkb)`
/// with `g = K_N·1` a polynomial. Direct `O(N²)` sum.
pub fn evolve_by_operator_series(
    psi: &WaveFunction,
    h: &HamiltonianSpec,
    t: f64,
    order: usize,
) -> Result<Evolution> {
    psi.require(Representation::Position)?;
    let hbar = psi.hbar();
    if (hbar - h.hbar()).abs() > 1e-15 * hbar {
        return Err(Error::param(format!(
            "state has hbar {hbar} but the Hamiltonian uses {}",
            h.hbar()
        )));
    }
    let (position, kernel_terms) = series_parts(h, t, order)?;
    let affine: BTreeMap<(u32, u32), C64> = position.numeric_terms(hbar);
    if affine.keys().any(|&(qa, pb)| qa + pb > 1) {
        return Err(Error::UnsupportedHamiltonian {
            operation: "evolve_by_operator_series",
            reason: format!(
                "the Heisenberg position under {} is not affine in q and p; use a polynomial state",
                h.name()
            ),
        });
    }
    let get = |key| affine.get(&key).copied().unwrap_or_default();
    let (a, b, c) = (get((1, 0)), get((0, 1)), get((0, 0)));

    let mut g = vec![C64::new(0.0, 0.0)];
    let grid = psi.grid();
    let weights: Vec<f64> = psi.amplitudes().iter().map(|v| v.norm()).collect();
    let mut sizes = Vec::with_capacity(kernel_terms.len());
    for term in &kernel_terms {
        let coefficients = q_coefficients(term, hbar);
        // size of this order where the state lives
        let size = grid
            .positions()
            .iter()
            .zip(&weights)
            .map(|(q, w)| w * horner(&coefficients, C64::new(*q, 0.0)).norm())
            .fold(0.0, f64::max);
        sizes.push(size);
        if coefficients.len() > g.len() {
            g.resize(coefficients.len(), C64::new(0.0, 0.0));
        }
        for (gi, ci) in g.iter_mut().zip(&coefficients) {
            *gi += ci;
        }
    }

    let transform = SpectralTransform::new(grid);
    let momentum = transform.forward(psi.amplitudes());
    let norm = grid.dk() / (2.0 * PI).sqrt();
    let modes: Vec<(f64, C64)> = (0..grid.len())
        .filter(|&j| momentum[j] != C64::new(0.0, 0.0))
        .map(|j| {
            let k = grid.wavenumber(j);
            let weight = momentum[j] * norm * (C64::i() * (k * c + 0.5 * hbar * k * k * a * b)).exp();
            (k, weight)
        })
        .collect();
    let out: Vec<C64> = grid
        .positions()
        .into_iter()
        .map(|q| {
            modes
                .iter()
                .map(|&(k, weight)| {
                    weight * (C64::i() * k * a * q).exp() * horner(&g, q + hbar * k * b)
                })
                .sum()
        })
        .collect();
    if out.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::Numerical("operator series produced non-finite amplitudes".into()));
    }
    let mut evolution = Evolution::checked(psi.with_amplitudes(out)?)?;
    evolution.warnings.extend(divergence_warning(&sizes));
    Ok(evolution)
}
