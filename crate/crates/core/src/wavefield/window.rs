use serde::{Deserialize, Serialize};

use super::Grid1D;
use crate::error::{Error, Result};

/// Smooth window that equals 1 on `|q − center| ≤ plateau`, 0 beyond
/// `|q − center| ≥ support`, and blends between them with a C∞ step.
///
/// Used to give non-normalizable functions (the unit function, plain
/// polynomials) a compact footprint on a periodic grid. Results are only
/// meaningful where the window is exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateauWindow {
    pub center: f64,
    pub plateau: f64,
    pub support: f64,
}

impl PlateauWindow {
    pub fn new(center: f64, plateau: f64, support: f64) -> Result<Self> {
        if !(plateau > 0.0 && support > plateau && center.is_finite() && support.is_finite()) {
            return Err(Error::param(format!(
                "window needs 0 < plateau < support, got plateau {plateau}, support {support}"
            )));
        }
        Ok(Self {
            center,
            plateau,
            support,
        })
    }

    /// Centered window whose support ends `margin` inside both box edges.
    pub fn inside(grid: &Grid1D, plateau_fraction: f64, margin_fraction: f64) -> Result<Self> {
        let center = 0.5 * (grid.q_min() + grid.q_max());
        let half = 0.5 * grid.length();
        let support = half * (1.0 - margin_fraction);
        Self::new(center, support * plateau_fraction, support)
    }

    pub fn value(&self, q: f64) -> f64 {
        let r = (q - self.center).abs();
        if r <= self.plateau {
            1.0
        } else if r >= self.support {
            0.0
        } else {
            1.0 - smooth_step((r - self.plateau) / (self.support - self.plateau))
        }
    }

    pub fn sample(&self, grid: &Grid1D) -> Vec<f64> {
        grid.positions().into_iter().map(|q| self.value(q)).collect()
    }

    /// Whether sample `q` lies on the flat part of the window.
    pub fn in_plateau(&self, q: f64) -> bool {
        (q - self.center).abs() <= self.plateau
    }

    /// Indices of grid samples within `fraction · plateau` of the center.
    pub fn interior_indices(&self, grid: &Grid1D, fraction: f64) -> Vec<usize> {
        let reach = self.plateau * fraction;
        grid.positions()
            .iter()
            .enumerate()
            .filter(|(_, q)| (*q - self.center).abs() <= reach)
            .map(|(j, _)| j)
            .collect()
    }
}

// 0 at x ≤ 0, 1 at x ≥ 1, every derivative continuous.
fn smooth_step(x: f64) -> f64 {
    let bump = |y: f64| if y <= 0.0 { 0.0 } else { (-1.0 / y).exp() };
    let a = bump(x);
    let b = bump(1.0 - x);
    a / (a + b)
}
