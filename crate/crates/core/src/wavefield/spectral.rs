use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use super::Grid1D;
use crate::C64;

/// Unitary continuum-normalised Fourier transform on a [`Grid1D`].
///
/// Forward: `A(k_j) = dq/√(2π) · Σ_n ψ(q_n) e^{−i k_j q_n}`.
/// Inverse: `ψ(q_n) = dk/√(2π) · Σ_j A(k_j) e^{+i k_j q_n}`.
///
/// With these weights `Σ|ψ|² dq = Σ|A|² dk` and the pair is an exact inverse.
/// Plans are built once, so keep one of these around when transforming
/// repeatedly (e.g. inside a time-stepping loop).
#[derive(Clone)]
pub struct SpectralTransform {
    grid: Grid1D,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    // e^{−i k_j q_min}
    origin_phase: Vec<C64>,
}

impl std::fmt::Debug for SpectralTransform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralTransform")
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

impl SpectralTransform {
    pub fn new(grid: &Grid1D) -> Self {
        let mut planner = FftPlanner::new();
        let n = grid.len();
        let origin_phase = grid
            .wavenumbers()
            .iter()
            .map(|&k| C64::from_polar(1.0, -k * grid.q_min()))
            .collect();
        Self {
            grid: grid.clone(),
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            origin_phase,
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// Position samples to momentum amplitudes, in place.
    pub fn forward_in_place(&self, data: &mut [C64]) {
        self.forward.process(data);
        let w = self.grid.dq() / (2.0 * PI).sqrt();
        for (a, phase) in data.iter_mut().zip(&self.origin_phase) {
            *a *= phase * w;
        }
    }

    /// Momentum amplitudes to position samples, in place.
    pub fn inverse_in_place(&self, data: &mut [C64]) {
        let w = self.grid.dk() / (2.0 * PI).sqrt();
        for (a, phase) in data.iter_mut().zip(&self.origin_phase) {
            *a *= phase.conj() * w;
        }
        self.inverse.process(data);
    }

    pub fn forward(&self, data: &[C64]) -> Vec<C64> {
        let mut out = data.to_vec();
        self.forward_in_place(&mut out);
        out
    }

    pub fn inverse(&self, data: &[C64]) -> Vec<C64> {
        let mut out = data.to_vec();
        self.inverse_in_place(&mut out);
        out
    }

    /// Multiply the momentum amplitudes of a position-space signal by
    /// `factor(k)` and return to position space.
    pub fn multiply_in_momentum(&self, data: &mut [C64], factor: impl Fn(f64) -> C64) {
        self.forward_in_place(data);
        for (j, a) in data.iter_mut().enumerate() {
            *a *= factor(self.grid.wavenumber(j));
        }
        self.inverse_in_place(data);
    }
}
