use serde::{Deserialize, Serialize};

use super::kernel::{ho_parameters, make_kernel, KernelForm};
use super::polynomial::{free_polynomial_coefficients, horner, scaled_free_polynomial_coefficients, PolynomialState};
use crate::error::{Error, Result};
use crate::opalgebra::{HamiltonianKind, HamiltonianSpec};
use crate::wavefield::Grid1D;
use crate::C64;

/// Number of sample points used to bound series blocks on the window.
const WINDOW_SAMPLES: usize = 257;
/// Blocks summed past the cutoff to estimate the dropped tail.
const TAIL_BLOCKS: usize = 4;
/// Largest block count tried when choosing the cutoff automatically.
const MAX_BLOCKS: usize = 300;

/// Controls the harmonic evolution, which expands `ψ(x)·e^{x²/(2q0²)}` in
/// powers of `x` and keeps blocks `k ≤ k_max` of the Gaussian factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicTruncation {
    /// Half-width of the region `|q| ≤ window` on which the tail is bounded.
    pub window: f64,
    /// Fixed cutoff; `None` picks the smallest one meeting `tolerance`.
    pub k_max: Option<usize>,
    pub tolerance: f64,
}

impl Default for HarmonicTruncation {
    fn default() -> Self {
        Self {
            window: 3.0,
            k_max: None,
            tolerance: 1e-10,
        }
    }
}

/// Factor multiplying the polynomial part of an evolved polynomial state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    Kernel(KernelForm),
    /// `scale · e^{−q²/(2q0²)}`
    Gaussian { scale: C64, q0: f64 },
}

impl Envelope {
    pub fn evaluate(&self, q: f64) -> C64 {
        match self {
            Envelope::Kernel(k) => k.evaluate(q),
            Envelope::Gaussian { scale, q0 } => scale * (-0.5 * (q / q0).powi(2)).exp(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationReport {
    pub k_max: usize,
    pub tail_estimate: f64,
}

/// `ψ(q, t) = envelope(q) · polynomial(q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialEvolution {
    pub polynomial: PolynomialState,
    pub envelope: Envelope,
    pub truncation: Option<TruncationReport>,
}

impl PolynomialEvolution {
    pub fn evaluate(&self, q: f64) -> C64 {
        self.envelope.evaluate(q) * self.polynomial.evaluate(q)
    }

    pub fn sample(&self, grid: &Grid1D) -> Vec<C64> {
        grid.positions().into_iter().map(|q| self.evaluate(q)).collect()
    }
}

/// Evolve a polynomial wavefunction in closed form.
///
/// Free: each `qⁿ` becomes its free-space polynomial. Constant force: the
/// free result shifted by `Ft²/2m`, times the linear-phase kernel.
/// Harmonic: the state is written as `e^{−x²/(2q0²)}·G(x)`, `G` is
/// truncated, and each `xʲ` maps to `αʲ·(q + c·d/dq)ʲ·1` with `c = iħτ/m`.
pub fn evolve_polynomial_state(
    p: &PolynomialState,
    h: &HamiltonianSpec,
    t: f64,
    truncation: &HarmonicTruncation,
) -> Result<PolynomialEvolution> {
    let hbar = h.hbar();
    if (p.hbar() - hbar).abs() > 1e-15 * hbar {
        return Err(Error::param(format!(
            "state has hbar {} but the Hamiltonian uses {hbar}",
            p.hbar()
        )));
    }
    match *h.kind() {
        HamiltonianKind::Free { mass } => Ok(PolynomialEvolution {
            polynomial: free_evolve(p, C64::new(0.0, hbar * t / mass), mass)?,
            envelope: Envelope::Kernel(KernelForm::Identity),
            truncation: None,
        }),
        HamiltonianKind::ConstantForce { mass, force } => {
            let free = free_evolve(p, C64::new(0.0, hbar * t / mass), mass)?;
            Ok(PolynomialEvolution {
                polynomial: free.shifted(force * t * t / (2.0 * mass)),
                envelope: Envelope::Kernel(make_kernel(h, t)?),
                truncation: None,
            })
        }
        HamiltonianKind::Harmonic { mass, omega } => harmonic(p, mass, omega, hbar, t, truncation),
        _ => Err(Error::UnsupportedHamiltonian {
            operation: "evolve_polynomial_state",
            reason: format!("{} has no polynomial closed form", h.name()),
        }),
    }
}

fn free_evolve(p: &PolynomialState, c: C64, mass: f64) -> Result<PolynomialState> {
    let mut out = vec![C64::new(0.0, 0.0); p.coefficients().len()];
    for (n, a) in p.coefficients().iter().enumerate() {
        if *a == C64::new(0.0, 0.0) {
            continue;
        }
        for (l, v) in free_polynomial_coefficients(n as u32, c).into_iter().enumerate() {
            out[l] += a * v;
        }
    }
    PolynomialState::new(out, p.hbar(), mass)
}

fn harmonic(
    p: &PolynomialState,
    mass: f64,
    omega: f64,
    hbar: f64,
    t: f64,
    truncation: &HarmonicTruncation,
) -> Result<PolynomialEvolution> {
    if !(truncation.window > 0.0 && truncation.tolerance > 0.0) {
        return Err(Error::param("harmonic truncation needs a positive window and tolerance"));
    }
    let q0 = (hbar / (mass * omega)).sqrt();
    let (alpha, tau) = ho_parameters(omega, t);
    let c = C64::new(0.0, hbar / mass) * tau;
    let samples: Vec<f64> = (0..WINDOW_SAMPLES)
        .map(|i| truncation.window * (2.0 * i as f64 / (WINDOW_SAMPLES - 1) as f64 - 1.0))
        .collect();
    let envelope_weights: Vec<f64> = samples.iter().map(|q| (-0.5 * (q / q0).powi(2)).exp()).collect();

    // block k: Σ_l ψ_l/((2q0²)^k k!) · α^{l+2k} · FP_{l+2k}(q; c)
    let block = |k: usize| -> Vec<C64> {
        let ln_scale: f64 = (1..=k).map(|i| -(2.0 * q0 * q0 * i as f64).ln()).sum();
        let mut out = vec![C64::new(0.0, 0.0); p.coefficients().len() + 2 * k];
        for (l, a) in p.coefficients().iter().enumerate() {
            if *a == C64::new(0.0, 0.0) {
                continue;
            }
            let j = l + 2 * k;
            let weight = a * alpha.powu(j as u32);
            let terms = scaled_free_polynomial_coefficients(j as u32, c, ln_scale);
            for (i, v) in terms.into_iter().enumerate() {
                out[i] += weight * v;
            }
        }
        out
    };
    let bound = |coefficients: &[C64]| -> f64 {
        samples
            .iter()
            .zip(&envelope_weights)
            .map(|(q, w)| w * horner(coefficients, C64::new(*q, 0.0)).norm())
            .fold(0.0, f64::max)
    };

    let mut blocks: Vec<Vec<C64>> = Vec::new();
    let mut bounds: Vec<f64> = Vec::new();
    let push_block = |blocks: &mut Vec<Vec<C64>>, bounds: &mut Vec<f64>| {
        let b = block(blocks.len());
        bounds.push(bound(&b));
        blocks.push(b);
    };
    let tail_after = |bounds: &[f64], k: usize| -> f64 {
        let tail = &bounds[k + 1..=k + TAIL_BLOCKS];
        let last = tail[TAIL_BLOCKS - 1];
        let ratio = last / tail[TAIL_BLOCKS - 2];
        if !ratio.is_finite() || ratio >= 1.0 {
            if last == 0.0 {
                return tail.iter().sum();
            }
            return f64::INFINITY;
        }
        tail.iter().sum::<f64>() + last * ratio / (1.0 - ratio)
    };

    let (k_max, estimate) = match truncation.k_max {
        Some(k) => {
            while blocks.len() <= k + TAIL_BLOCKS {
                push_block(&mut blocks, &mut bounds);
            }
            (k, tail_after(&bounds, k))
        }
        None => {
            let mut chosen = None;
            for k in 0..MAX_BLOCKS {
                while blocks.len() <= k + TAIL_BLOCKS {
                    push_block(&mut blocks, &mut bounds);
                }
                let est = tail_after(&bounds, k);
                if est <= truncation.tolerance {
                    chosen = Some((k, est));
                    break;
                }
            }
            match chosen {
                Some(found) => found,
                None => {
                    let k = MAX_BLOCKS - 1;
                    (k, tail_after(&bounds, k))
                }
            }
        }
    };
    if estimate.is_nan() || estimate > truncation.tolerance {
        return Err(Error::Truncation {
            estimate,
            tolerance: truncation.tolerance,
        });
    }

    let degree = p.coefficients().len() + 2 * k_max;
    let mut total = vec![C64::new(0.0, 0.0); degree];
    for b in &blocks[..=k_max] {
        for (i, v) in b.iter().enumerate() {
            total[i] += v;
        }
    }
    Ok(PolynomialEvolution {
        polynomial: PolynomialState::new(total, hbar, mass)?,
        envelope: Envelope::Gaussian {
            scale: C64::from_polar(1.0, -0.5 * omega * t),
            q0,
        },
        truncation: Some(TruncationReport {
            k_max,
            tail_estimate: estimate,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> PolynomialState {
        PolynomialState::new(vec![C64::new(1.0, 0.0)], 1.0, 1.0).unwrap()
    }

    fn q() -> PolynomialState {
        PolynomialState::monomial(1, 1.0, 1.0).unwrap()
    }

    #[test]
    fn free_leaves_q_alone() {
        let h = HamiltonianSpec::free(1.0, 1.0).unwrap();
        let out = evolve_polynomial_state(&q(), &h, 2.5, &HarmonicTruncation::default()).unwrap();
        assert_eq!(out.polynomial, q());
        assert_eq!(out.envelope, Envelope::Kernel(KernelForm::Identity));
    }

    #[test]
    fn constant_force_unit_gives_kernel() {
        let h = HamiltonianSpec::constant_force(1.0, 1.0, 1.0).unwrap();
        let t = 0.8;
        let out = evolve_polynomial_state(&one(), &h, t, &HarmonicTruncation::default()).unwrap();
        let k = make_kernel(&h, t).unwrap();
        for x in [-2.0, 0.0, 1.5] {
            assert!((out.evaluate(x) - k.evaluate(x)).norm() < 1e-15);
        }
    }

    #[test]
    fn constant_force_linear_state() {
        let h = HamiltonianSpec::constant_force(1.0, 1.0, 1.0).unwrap();
        let t = 1.3;
        let out = evolve_polynomial_state(&q(), &h, t, &HarmonicTruncation::default()).unwrap();
        let k = make_kernel(&h, t).unwrap();
        for x in [-2.0, 0.0, 1.5] {
            let expected = k.evaluate(x) * (x - t * t / 2.0);
            assert!((out.evaluate(x) - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn harmonic_unit_is_kernel() {
        let h = HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap();
        for t in [0.1, 0.4, 0.7] {
            let out = evolve_polynomial_state(&one(), &h, t, &HarmonicTruncation::default()).unwrap();
            let k = make_kernel(&h, t).unwrap();
            for i in 0..=20 {
                let x = -3.0 + 0.3 * i as f64;
                assert!((out.evaluate(x) - k.evaluate(x)).norm() < 1e-9, "t={t} x={x}");
            }
        }
    }

    #[test]
    fn harmonic_linear_state_scales_by_secant() {
        // e^{−iHt}q = (q/cos ωt)·K(q, t)
        let (m, w) = (2.0, 0.5);
        let h = HamiltonianSpec::harmonic(m, w, 1.0).unwrap();
        let state = PolynomialState::monomial(1, 1.0, m).unwrap();
        let t = 1.1;
        let opts = HarmonicTruncation {
            window: 2.0,
            ..HarmonicTruncation::default()
        };
        let out = evolve_polynomial_state(&state, &h, t, &opts).unwrap();
        let k = make_kernel(&h, t).unwrap();
        for x in [-2.0, -0.5, 1.0, 2.0] {
            let expected = x / (w * t).cos() * k.evaluate(x);
            assert!((out.evaluate(x) - expected).norm() < 1e-9);
        }
    }

    #[test]
    fn harmonic_truncation_is_reported() {
        let h = HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap();
        let tight = HarmonicTruncation {
            window: 3.0,
            k_max: Some(2),
            tolerance: 1e-12,
        };
        assert!(matches!(
            evolve_polynomial_state(&one(), &h, 0.3, &tight),
            Err(Error::Truncation { .. })
        ));
        let out = evolve_polynomial_state(&one(), &h, 0.3, &HarmonicTruncation::default()).unwrap();
        let report = out.truncation.unwrap();
        assert!(report.tail_estimate <= 1e-10 && report.k_max > 2);
    }

    #[test]
    fn rejects_other_hamiltonians() {
        let h = HamiltonianSpec::inverted_harmonic(1.0, 1.0, 1.0).unwrap();
        assert!(evolve_polynomial_state(&one(), &h, 0.3, &HarmonicTruncation::default()).is_err());
    }
}
