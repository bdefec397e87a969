use serde::{Deserialize, Serialize};

use super::{Representation, WaveFunction};
use crate::error::{Error, Result};

/// First and second moments of `q̂` and `p̂ = −iħ d/dq`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservableReport {
    pub norm: f64,
    pub mean_q: f64,
    pub mean_p: f64,
    pub var_q: f64,
    pub var_p: f64,
}

/// Distance between two states.
///
/// `l2_distance` is phase sensitive; `fidelity = |⟨ψ1|ψ2⟩| / (‖ψ1‖‖ψ2‖)`
/// ignores a global phase, so `ψ` and `e^{iθ}ψ` have fidelity one but a
/// nonzero distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub l2_distance: f64,
    pub fidelity: f64,
    pub max_pointwise: f64,
}

fn moments(weights: &[f64], coords: &[f64], spacing: f64) -> (f64, f64, f64) {
    let mut m0 = 0.0;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for (&w, &x) in weights.iter().zip(coords) {
        m0 += w;
        m1 += w * x;
        m2 += w * x * x;
    }
    let norm = m0 * spacing;
    let mean = m1 / m0;
    let var = (m2 / m0 - mean * mean).max(0.0);
    (norm, mean, var)
}

pub fn observables(psi: &WaveFunction) -> Result<ObservableReport> {
    let pos = psi.to_position()?;
    let mom = psi.to_momentum()?;
    let grid = psi.grid();

    let density: Vec<f64> = pos.amplitudes().iter().map(|a| a.norm_sqr()).collect();
    if density.iter().sum::<f64>() <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    let (norm, mean_q, var_q) = moments(&density, &grid.positions(), grid.dq());

    let mdensity: Vec<f64> = mom.amplitudes().iter().map(|a| a.norm_sqr()).collect();
    let momenta: Vec<f64> = grid
        .wavenumbers()
        .iter()
        .map(|k| psi.hbar() * k)
        .collect();
    let (_, mean_p, var_p) = moments(&mdensity, &momenta, grid.dk());

    Ok(ObservableReport {
        norm,
        mean_q,
        mean_p,
        var_q,
        var_p,
    })
}

pub fn compare(a: &WaveFunction, b: &WaveFunction) -> Result<ComparisonReport> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    if a.representation() != b.representation() {
        return Err(Error::RepresentationMismatch {
            expected: a.representation().name(),
            found: b.representation().name(),
        });
    }
    let spacing = match a.representation() {
        Representation::Position => a.grid().dq(),
        Representation::Momentum => a.grid().dk(),
    };
    let mut dist2 = 0.0;
    let mut max_pointwise: f64 = 0.0;
    let mut overlap = crate::C64::new(0.0, 0.0);
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        let d = (x - y).norm();
        dist2 += d * d;
        max_pointwise = max_pointwise.max(d);
        overlap += x.conj() * y;
    }
    let na = a.norm();
    let nb = b.norm();
    let fidelity = if na > 0.0 && nb > 0.0 {
        overlap.norm() * spacing / (na * nb).sqrt()
    } else {
        0.0
    };
    Ok(ComparisonReport {
        l2_distance: (dist2 * spacing).sqrt(),
        fidelity,
        max_pointwise,
    })
}
