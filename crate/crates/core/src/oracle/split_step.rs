use super::PotentialGrid;
use crate::error::{Error, Result};
use crate::wavefield::{Representation, SpectralTransform, WaveFunction};
use crate::C64;

/// Second-order (Strang) split-step evolution under `p̂²/2m + V(q̂)`.
///
/// Each step is a half kinetic step in momentum space, a full potential
/// step in position space, and another half kinetic step; adjacent half
/// steps are merged.
pub fn split_step_evolve(
    psi: &WaveFunction,
    v: &PotentialGrid,
    t: f64,
    steps: usize,
    mass: f64,
) -> Result<WaveFunction> {
    psi.require(Representation::Position)?;
    if psi.grid() != v.grid() {
        return Err(Error::GridMismatch);
    }
    if steps == 0 {
        return Err(Error::param("split-step evolution needs at least one step"));
    }
    if !(mass > 0.0 && mass.is_finite() && t.is_finite()) {
        return Err(Error::param(format!("invalid mass {mass} or time {t}")));
    }
    if t == 0.0 {
        return Ok(psi.clone());
    }
    let hbar = psi.hbar();
    let grid = psi.grid();
    let dt = t / steps as f64;
    let transform = SpectralTransform::new(grid);
    let kinetic = |fraction: f64| -> Vec<C64> {
        grid.wavenumbers()
            .iter()
            .map(|k| C64::from_polar(1.0, -fraction * hbar * k * k * dt / (2.0 * mass)))
            .collect()
    };
    let half = kinetic(0.5);
    let full = kinetic(1.0);
    let potential: Vec<C64> = v
        .values()
        .iter()
        .map(|value| C64::from_polar(1.0, -value * dt / hbar))
        .collect();

    let mut data = psi.amplitudes().to_vec();
    transform.forward_in_place(&mut data);
    for (a, f) in data.iter_mut().zip(&half) {
        *a *= f;
    }
    for step in 0..steps {
        transform.inverse_in_place(&mut data);
        for (a, f) in data.iter_mut().zip(&potential) {
            *a *= f;
        }
        transform.forward_in_place(&mut data);
        let factor = if step + 1 == steps { &half } else { &full };
        for (a, f) in data.iter_mut().zip(factor) {
            *a *= f;
        }
    }
    transform.inverse_in_place(&mut data);
    psi.with_amplitudes(data)
}
