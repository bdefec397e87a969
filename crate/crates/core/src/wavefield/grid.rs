use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid on `[q_min, q_max)` with `n_points` samples.
///
/// Sample `j` sits at `q_min + j·dq`. The conjugate wavenumber grid has
/// spacing `dk = 2π / (n_points·dq)` and is stored in FFT order
/// (`0, dk, …, (n/2 − 1)·dk, −n/2·dk, …, −dk`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridSpec", into = "GridSpec")]
pub struct Grid1D {
    n_points: usize,
    q_min: f64,
    q_max: f64,
}

#[derive(Serialize, Deserialize)]
struct GridSpec {
    n_points: usize,
    q_min: f64,
    q_max: f64,
}

impl TryFrom<GridSpec> for Grid1D {
    type Error = Error;

    fn try_from(spec: GridSpec) -> Result<Self> {
        Grid1D::new(spec.n_points, spec.q_min, spec.q_max)
    }
}

impl From<Grid1D> for GridSpec {
    fn from(grid: Grid1D) -> Self {
        GridSpec {
            n_points: grid.n_points,
            q_min: grid.q_min,
            q_max: grid.q_max,
        }
    }
}

impl Grid1D {
    pub fn new(n_points: usize, q_min: f64, q_max: f64) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_points must be a power of two >= 8, got {n_points}"
            )));
        }
        if !(q_min.is_finite() && q_max.is_finite()) || q_max <= q_min {
            return Err(Error::InvalidGrid(format!(
                "degenerate interval [{q_min}, {q_max}]"
            )));
        }
        Ok(Self {
            n_points,
            q_min,
            q_max,
        })
    }

    /// Grid centred on the origin, `[−half_width, half_width)`.
    pub fn symmetric(n_points: usize, half_width: f64) -> Result<Self> {
        Self::new(n_points, -half_width, half_width)
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn length(&self) -> f64 {
        self.q_max - self.q_min
    }

    pub fn dq(&self) -> f64 {
        self.length() / self.n_points as f64
    }

    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length()
    }

    /// Largest representable wavenumber magnitude (the Nyquist wavenumber).
    pub fn k_max(&self) -> f64 {
        PI / self.dq()
    }

    pub fn position(&self, j: usize) -> f64 {
        self.q_min + j as f64 * self.dq()
    }

    pub fn wavenumber(&self, j: usize) -> f64 {
        let n = self.n_points as i64;
        let j = j as i64;
        let shifted = if j < n / 2 { j } else { j - n };
        shifted as f64 * self.dk()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.position(j)).collect()
    }

    /// Wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.wavenumber(j)).collect()
    }

    /// Index of the sample whose parity image is `j` (`q → −q` about the
    /// grid midpoint, periodic).
    pub fn mirror_index(&self, j: usize) -> usize {
        (self.n_points - j) % self.n_points
    }

    /// True when the grid midpoint is the origin, so that `mirror_index`
    /// realises `q → −q`.
    pub fn is_symmetric(&self) -> bool {
        (self.q_min + self.q_max).abs() <= 1e-12 * self.length()
    }
}
