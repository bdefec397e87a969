use crate::error::{Error, Result};
use crate::opalgebra::{apply_operator_polynomial, HamiltonianSpec};
use crate::wavefield::{Grid1D, PlateauWindow, WaveFunction};
use crate::C64;

/// Default time step for residual sampling.
pub const RESIDUAL_DT: f64 = 1e-4;

/// A grid function sampled at equally spaced times `t0 + i·dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSamples {
    pub grid: Grid1D,
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<Vec<C64>>,
}

impl TimeSamples {
    pub fn new(grid: &Grid1D, t0: f64, dt: f64, values: Vec<Vec<C64>>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::param(format!("time step must be positive, got {dt}")));
        }
        if values.iter().any(|v| v.len() != grid.len()) {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            grid: grid.clone(),
            t0,
            dt,
            values,
        })
    }

    /// Sample `f(q, t)` at `count` times starting at `t0`.
    pub fn from_fn(
        grid: &Grid1D,
        t0: f64,
        dt: f64,
        count: usize,
        f: impl Fn(f64, f64) -> C64,
    ) -> Result<Self> {
        let positions = grid.positions();
        let values = (0..count)
            .map(|i| {
                let t = t0 + i as f64 * dt;
                positions.iter().map(|&q| f(q, t)).collect()
            })
            .collect();
        Self::new(grid, t0, dt, values)
    }

    /// Samples centred on `t` for the chosen stencil.
    pub fn around(
        grid: &Grid1D,
        t: f64,
        dt: f64,
        stencil: Stencil,
        f: impl Fn(f64, f64) -> C64,
    ) -> Result<Self> {
        let half = stencil.half_width();
        Self::from_fn(grid, t - half as f64 * dt, dt, 2 * half + 1, f)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Finite-difference stencil for the time derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stencil {
    /// Second-order central difference (3 samples).
    #[default]
    Central,
    /// Richardson-extrapolated central difference, fourth order (5 samples).
    Richardson,
}

impl Stencil {
    fn half_width(self) -> usize {
        match self {
            Stencil::Central => 1,
            Stencil::Richardson => 2,
        }
    }

    fn derivative(self, v: &[Vec<C64>], i: usize, j: usize, dt: f64) -> C64 {
        match self {
            Stencil::Central => (v[i + 1][j] - v[i - 1][j]) / (2.0 * dt),
            Stencil::Richardson => {
                (-v[i + 2][j] + 8.0 * v[i + 1][j] - 8.0 * v[i - 1][j] + v[i - 2][j]) / (12.0 * dt)
            }
        }
    }
}

/// Largest relative residual `‖iħ∂ₜK − ĤK‖ / ‖K‖` over the samples where the
/// stencil fits.
///
/// `ĤK` is computed spectrally on `window·K`, and both norms are taken over
/// the plateau of the window only, where the windowed and bare functions
/// coincide.
pub fn schrodinger_residual(
    samples: &TimeSamples,
    h: &HamiltonianSpec,
    window: &PlateauWindow,
    stencil: Stencil,
) -> Result<f64> {
    let half = stencil.half_width();
    if samples.len() < 2 * half + 1 {
        return Err(Error::param(format!(
            "residual needs at least {} time samples, got {}",
            2 * half + 1,
            samples.len()
        )));
    }
    let grid = &samples.grid;
    let hbar = h.hbar();
    let w = window.sample(grid);
    let interior = window.interior_indices(grid, 1.0);
    if interior.is_empty() {
        return Err(Error::param("window plateau contains no grid points"));
    }
    let operator = h.operator();
    let mut worst: f64 = 0.0;
    for i in half..samples.len() - half {
        let windowed: Vec<C64> = samples.values[i].iter().zip(&w).map(|(k, w)| k * w).collect();
        let state = WaveFunction::new(
            grid.clone(),
            windowed,
            crate::wavefield::Representation::Position,
            hbar,
        )?;
        let hk = apply_operator_polynomial(&operator, &state)?;
        let mut num = 0.0;
        let mut den = 0.0;
        for &j in &interior {
            let dk = stencil.derivative(&samples.values, i, j, samples.dt);
            let r = C64::new(0.0, hbar) * dk - hk.amplitudes()[j];
            num += r.norm_sqr();
            den += samples.values[i][j].norm_sqr();
        }
        if den == 0.0 {
            return Err(Error::ZeroNorm);
        }
        worst = worst.max((num / den).sqrt());
    }
    Ok(worst)
}
