use crate::error::{Error, Result};
use crate::opalgebra::HamiltonianSpec;
use crate::wavefield::Grid1D;

/// Real potential sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialGrid {
    grid: Grid1D,
    values: Vec<f64>,
}

impl PotentialGrid {
    pub fn new(grid: &Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::param(format!(
                "potential has {} samples for a grid of {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("non-finite potential sample".into()));
        }
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub fn zero(grid: &Grid1D) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_fn(grid: &Grid1D, v: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.positions().into_iter().map(v).collect())
    }

    /// Mass and sampled potential of a Hamiltonian `p̂²/2m + V(q̂)`.
    pub fn from_hamiltonian(h: &HamiltonianSpec, grid: &Grid1D) -> Result<(f64, Self)> {
        let (mass, v) = h.potential().ok_or_else(|| Error::UnsupportedHamiltonian {
            operation: "potential sampling",
            reason: format!("{} is not of the form p²/2m + V(q)", h.name()),
        })?;
        Ok((mass, Self::from_fn(grid, v)?))
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
