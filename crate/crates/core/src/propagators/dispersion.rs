use serde::{Deserialize, Serialize};

use super::evolution::Evolution;
use crate::error::{Error, Result};
use crate::wavefield::{Representation, SpectralTransform, WaveFunction};
use crate::C64;

/// Energy as a function of wavenumber for a free particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DispersionRelation {
    /// `ħ²k²/2m`
    NonRelativistic { mass: f64 },
    /// `√((ħkc)² + (mc²)²)`
    Relativistic { mass: f64, c: f64 },
    /// `ħ|k|c`
    Massless { c: f64 },
}

/// What to do with the constant `mc²` in the relativistic phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RestPhase {
    #[default]
    Keep,
    /// Measure energies from `mc²`, dropping the global phase `e^{−imc²t/ħ}`.
    Remove,
}

impl DispersionRelation {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DispersionRelation::NonRelativistic { mass } => mass > 0.0 && mass.is_finite(),
            DispersionRelation::Relativistic { mass, c } => {
                mass > 0.0 && c > 0.0 && mass.is_finite() && c.is_finite()
            }
            DispersionRelation::Massless { c } => c > 0.0 && c.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param(format!("invalid dispersion parameters {self:?}")))
        }
    }

    pub fn energy(&self, k: f64, hbar: f64) -> f64 {
        match *self {
            DispersionRelation::NonRelativistic { mass } => (hbar * k).powi(2) / (2.0 * mass),
            DispersionRelation::Relativistic { mass, c } => {
                (hbar * k * c).hypot(mass * c * c)
            }
            DispersionRelation::Massless { c } => hbar * k.abs() * c,
        }
    }

    pub fn rest_energy(&self) -> f64 {
        match *self {
            DispersionRelation::Relativistic { mass, c } => mass * c * c,
            _ => 0.0,
        }
    }
}

/// `(1/ħ)·dE/dk`, evaluated analytically.
pub fn group_velocity(d: &DispersionRelation, k: f64, hbar: f64) -> Result<f64> {
    d.validate()?;
    if !k.is_finite() {
        return Err(Error::param(format!("wavenumber must be finite, got {k}")));
    }
    Ok(match *d {
        DispersionRelation::NonRelativistic { mass } => hbar * k / mass,
        DispersionRelation::Relativistic { c, .. } => hbar * c * c * k / d.energy(k, hbar),
        DispersionRelation::Massless { c } => {
            if k == 0.0 {
                return Err(Error::param("massless group velocity has no direction at k = 0"));
            }
            c * k.signum()
        }
    })
}

/// Free evolution by the phase `exp(−iE(k)t/ħ)` on each momentum component.
pub fn evolve_free_fourier(psi: &WaveFunction, t: f64, d: &DispersionRelation) -> Result<Evolution> {
    evolve_free_fourier_with(psi, t, d, RestPhase::Keep)
}

pub fn evolve_free_fourier_with(
    psi: &WaveFunction,
    t: f64,
    d: &DispersionRelation,
    rest: RestPhase,
) -> Result<Evolution> {
    psi.require(Representation::Position)?;
    d.validate()?;
    let hbar = psi.hbar();
    let offset = match rest {
        RestPhase::Keep => 0.0,
        RestPhase::Remove => d.rest_energy(),
    };
    let transform = SpectralTransform::new(psi.grid());
    let mut data = psi.amplitudes().to_vec();
    transform.multiply_in_momentum(&mut data, |k| {
        C64::from_polar(1.0, -(d.energy(k, hbar) - offset) * t / hbar)
    });
    Evolution::checked(psi.with_amplitudes(data)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefield::{compare, make_gaussian, observables, Grid1D};

    #[test]
    fn energies() {
        let nr = DispersionRelation::NonRelativistic { mass: 2.0 };
        let rel = DispersionRelation::Relativistic { mass: 1.0, c: 2.0 };
        let ml = DispersionRelation::Massless { c: 3.0 };
        for d in [nr, rel, ml] {
            for k in [0.3, 1.0, 7.5] {
                assert_eq!(d.energy(k, 1.0), d.energy(-k, 1.0));
            }
        }
        assert_eq!(nr.energy(0.0, 1.0), 0.0);
        assert_eq!(ml.energy(0.0, 1.0), 0.0);
        assert_eq!(rel.energy(0.0, 1.0), 4.0);
    }

    #[test]
    fn group_velocities() {
        let nr = DispersionRelation::NonRelativistic { mass: 1.0 };
        assert_eq!(group_velocity(&nr, 2.0, 1.0).unwrap(), 2.0);
        let ml = DispersionRelation::Massless { c: 1.0 };
        assert_eq!(group_velocity(&ml, -3.0, 1.0).unwrap(), -1.0);
        assert!(group_velocity(&ml, 0.0, 1.0).is_err());
        let rel = DispersionRelation::Relativistic { mass: 1.0, c: 1.0 };
        let v = group_velocity(&rel, 1.0, 1.0).unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-12);
        // central difference of E(k) as an independent check
        let h = 1e-5;
        for d in [nr, rel, DispersionRelation::Relativistic { mass: 0.3, c: 2.5 }] {
            for k in [-2.0, 0.4, 3.0] {
                let fd = (d.energy(k + h, 0.7) - d.energy(k - h, 0.7)) / (2.0 * h) / 0.7;
                assert!((group_velocity(&d, k, 0.7).unwrap() - fd).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let g = Grid1D::new(256, -20.0, 20.0).unwrap();
        let psi = make_gaussian(&g, 1.0, 1.5, 2.0, 1.0).unwrap();
        for d in [
            DispersionRelation::NonRelativistic { mass: 1.0 },
            DispersionRelation::Massless { c: 1.0 },
        ] {
            let out = evolve_free_fourier(&psi, 0.0, &d).unwrap();
            assert!(compare(&psi, &out.state).unwrap().max_pointwise < 1e-14);
        }
    }

    #[test]
    fn relativistic_rest_phase_is_global() {
        let g = Grid1D::new(256, -20.0, 20.0).unwrap();
        let psi = make_gaussian(&g, 0.0, 1.0, 1.0, 1.0).unwrap();
        let d = DispersionRelation::Relativistic { mass: 1.0, c: 1.0 };
        let kept = evolve_free_fourier(&psi, 0.8, &d).unwrap().state;
        let removed = evolve_free_fourier_with(&psi, 0.8, &d, RestPhase::Remove).unwrap().state;
        let rotated = kept
            .with_amplitudes(kept.amplitudes().iter().map(|a| a * C64::from_polar(1.0, 0.8)).collect())
            .unwrap();
        assert!(compare(&rotated, &removed).unwrap().l2_distance < 1e-12);
    }

    #[test]
    fn nonrelativistic_packet_moves_at_group_velocity() {
        let g = Grid1D::new(1024, -40.0, 40.0).unwrap();
        let psi = make_gaussian(&g, -5.0, 1.0, 2.0, 1.0).unwrap();
        let d = DispersionRelation::NonRelativistic { mass: 2.0 };
        let out = evolve_free_fourier(&psi, 3.0, &d).unwrap();
        assert!(out.is_clean());
        let obs = observables(&out.state).unwrap();
        assert!((obs.mean_q - (-5.0 + 3.0)).abs() < 1e-8);
        assert!((obs.norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn leak_is_flagged() {
        let g = Grid1D::new(256, -10.0, 10.0).unwrap();
        let psi = make_gaussian(&g, 0.0, 1.0, 0.0, 1.0).unwrap();
        let out = evolve_free_fourier(&psi, 20.0, &DispersionRelation::NonRelativistic { mass: 1.0 })
            .unwrap();
        assert!(!out.is_clean());
    }
}
