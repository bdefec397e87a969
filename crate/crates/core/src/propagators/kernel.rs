use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::opalgebra::{HamiltonianKind, HamiltonianSpec};
use crate::wavefield::Grid1D;
use crate::C64;

/// `|cos ωt|` below which the harmonic kernel is treated as singular.
const FOCUS_TOLERANCE: f64 = 1e-10;

/// Closed-form kernel `K(q, t)`: the evolution of the unit function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelForm {
    Identity,
    /// `cubic_phase · exp(i·linear_coeff·q)`.
    LinearPhase { cubic_phase: C64, linear_coeff: f64 },
    /// `prefactor · exp(q²/(2q0²) · (alpha/Re(alpha) − 1))`.
    HarmonicClosed {
        alpha: C64,
        tau: C64,
        q0: f64,
        prefactor: C64,
    },
}

impl KernelForm {
    pub fn evaluate(&self, q: f64) -> C64 {
        match *self {
            KernelForm::Identity => C64::new(1.0, 0.0),
            KernelForm::LinearPhase {
                cubic_phase,
                linear_coeff,
            } => cubic_phase * C64::from_polar(1.0, linear_coeff * q),
            KernelForm::HarmonicClosed {
                alpha, q0, prefactor, ..
            } => {
                let x = q / q0;
                prefactor * (0.5 * x * x * (alpha / alpha.re - 1.0)).exp()
            }
        }
    }

    pub fn sample(&self, grid: &Grid1D) -> Vec<C64> {
        grid.positions().into_iter().map(|q| self.evaluate(q)).collect()
    }
}

/// `α = e^{−iωt}` and `τ = e^{iωt}·sin(ωt)/ω`, so that the Heisenberg
/// position at `−t` dressed by the ground-state Gaussian reads `α(q̂ − p̂τ/m)`.
pub fn ho_parameters(omega: f64, t: f64) -> (C64, C64) {
    let theta = omega * t;
    let alpha = C64::from_polar(1.0, -theta);
    let tau = C64::from_polar(theta.sin() / omega, theta);
    (alpha, tau)
}

/// Closed-form kernel for the free, constant-force and harmonic cases.
pub fn make_kernel(h: &HamiltonianSpec, t: f64) -> Result<KernelForm> {
    let hbar = h.hbar();
    match *h.kind() {
        HamiltonianKind::Free { .. } => Ok(KernelForm::Identity),
        HamiltonianKind::ConstantForce { mass, force } => Ok(KernelForm::LinearPhase {
            cubic_phase: C64::from_polar(1.0, -force * force * t.powi(3) / (6.0 * mass * hbar)),
            linear_coeff: force * t / hbar,
        }),
        HamiltonianKind::Harmonic { mass, omega } => {
            let (alpha, tau) = ho_parameters(omega, t);
            let cos = alpha.re;
            if cos.abs() < FOCUS_TOLERANCE {
                return Err(Error::SingularKernel(format!(
                    "cos(ωt) = {cos:e}: the harmonic kernel focuses to a point at ωt = {}",
                    omega * t
                )));
            }
            // each focal point passed multiplies the amplitude by e^{−iπ/2}
            let crossings = ((omega * t + FRAC_PI_2) / PI).floor();
            let prefactor = C64::from_polar(cos.abs().powf(-0.5), -FRAC_PI_2 * crossings);
            Ok(KernelForm::HarmonicClosed {
                alpha,
                tau,
                q0: (hbar / (mass * omega)).sqrt(),
                prefactor,
            })
        }
        HamiltonianKind::InvertedHarmonic { .. } | HamiltonianKind::Custom(_) => {
            Err(Error::UnsupportedHamiltonian {
                operation: "make_kernel",
                reason: format!(
                    "no closed-form kernel for {}; build one from the spectrum instead",
                    h.name()
                ),
            })
        }
    }
}

/// Free kernel recovered from the momentum eigenstate `e^{ikq}`.
///
/// The evolved eigenstate `e^{ikq}·e^{−iħk²t/2m}` is divided by the
/// Heisenberg-shifted eigenstate `e^{ik(q̂ − p̂t/m)}·1 = e^{ikq}·e^{−iħk²t/2m}`,
/// sample by sample. Every `k` gives the same (unit) kernel.
pub fn kernel_equivalence_free(grid: &Grid1D, k: f64, t: f64, mass: f64, hbar: f64) -> Vec<C64> {
    let dispersion = C64::from_polar(1.0, -hbar * k * k * t / (2.0 * mass));
    // the factor ordering q̂ first, then p̂, costs e^{−[ikq̂, −ikp̂t/m]/2}
    let ordering = C64::from_polar(1.0, hbar * k * k * t / (2.0 * mass));
    grid.positions()
        .into_iter()
        .map(|q| {
            let evolved = C64::from_polar(1.0, k * q) * dispersion;
            let shifted_inverse = C64::from_polar(1.0, -k * q) * ordering;
            evolved * shifted_inverse
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn ho_parameter_values() {
        let (a, t) = ho_parameters(3.0, 0.0);
        assert!(close(a, C64::new(1.0, 0.0), 1e-15) && close(t, C64::new(0.0, 0.0), 1e-15));
        let (a, t) = ho_parameters(2.0, PI / 4.0);
        assert!(close(a, C64::new(0.0, -1.0), 1e-15));
        assert!(close(t, C64::new(0.0, 0.5), 1e-15));
        let (a, t) = ho_parameters(1.0, PI);
        assert!(close(a, C64::new(-1.0, 0.0), 1e-15));
        assert!(close(t, C64::new(0.0, 0.0), 1e-15));
    }

    #[test]
    fn dressed_argument_identity() {
        // α(q − pτ/m) = q cos ωt − p sin(ωt)/(mω) − i sin(ωt)·q·(ħ/(mω q0²))
        let (m, w, t) = (1.7, 0.9, 0.8);
        let (alpha, tau) = ho_parameters(w, t);
        assert!(close(alpha * tau / m, C64::new((w * t).sin() / (m * w), 0.0), 1e-15));
        assert!(close(alpha, C64::new((w * t).cos(), -(w * t).sin()), 1e-15));
    }

    #[test]
    fn kernels_at_zero_time_are_one() {
        let g = Grid1D::new(64, -5.0, 5.0).unwrap();
        for h in [
            HamiltonianSpec::free(1.0, 1.0).unwrap(),
            HamiltonianSpec::constant_force(1.0, 2.0, 0.5).unwrap(),
            HamiltonianSpec::harmonic(2.0, 3.0, 1.0).unwrap(),
        ] {
            let k = make_kernel(&h, 0.0).unwrap();
            assert!(k.sample(&g).iter().all(|v| close(*v, C64::new(1.0, 0.0), 1e-15)));
        }
    }

    #[test]
    fn constant_force_kernel_values() {
        let h = HamiltonianSpec::constant_force(1.0, 1.0, 1.0).unwrap();
        let k = make_kernel(&h, 1.0).unwrap();
        for q in [-2.0, 0.0, 0.3, 4.0] {
            assert!(close(k.evaluate(q), C64::from_polar(1.0, q - 1.0 / 6.0), 1e-15));
        }
    }

    #[test]
    fn harmonic_kernel_matches_mehler_form() {
        let (m, w, hbar) = (1.0, 1.0, 1.0);
        let h = HamiltonianSpec::harmonic(m, w, hbar).unwrap();
        for t in [0.3, 1.2, 2.0, 4.0] {
            let k = make_kernel(&h, t).unwrap();
            let c = (w * t).cos();
            for q in [-1.5, 0.0, 0.7] {
                let phase = -m * w / (2.0 * hbar) * (w * t).tan() * q * q;
                let modulus = c.abs().powf(-0.5);
                let v = k.evaluate(q);
                assert!((v.norm() - modulus).abs() < 1e-12);
                let expected_phase = C64::from_polar(1.0, phase);
                let ratio = v / modulus / expected_phase;
                // only the focal-point phase is left over
                let n = ((w * t + FRAC_PI_2) / PI).floor();
                assert!(close(ratio, C64::from_polar(1.0, -FRAC_PI_2 * n), 1e-12));
            }
        }
    }

    #[test]
    fn harmonic_focus_is_singular() {
        let h = HamiltonianSpec::harmonic(1.0, 2.0, 1.0).unwrap();
        assert!(matches!(make_kernel(&h, PI / 4.0), Err(Error::SingularKernel(_))));
    }

    #[test]
    fn unsupported_kinds() {
        let h = HamiltonianSpec::inverted_harmonic(1.0, 1.0, 1.0).unwrap();
        assert!(matches!(make_kernel(&h, 1.0), Err(Error::UnsupportedHamiltonian { .. })));
    }

    #[test]
    fn equivalence_class_is_trivial() {
        let g = Grid1D::new(128, -10.0, 10.0).unwrap();
        for (k, t, m) in [(0.0, 1.0, 1.0), (3.7, 2.0, 1.0), (-5.0, 0.1, 2.0)] {
            for v in kernel_equivalence_free(&g, k, t, m, 1.0) {
                assert!(close(v, C64::new(1.0, 0.0), 1e-12));
            }
        }
    }
}
