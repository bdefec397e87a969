use serde::{Deserialize, Serialize};

use super::{Grid1D, SpectralTransform};
use crate::error::{Error, Result};
use crate::C64;

/// Largest tolerated fraction of the norm in the edge bands of the box.
pub const EDGE_MASS_LIMIT: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    Position,
    Momentum,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Position => "position",
            Representation::Momentum => "momentum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Position → momentum.
    Forward,
    /// Momentum → position.
    Inverse,
}

/// Complex amplitudes on a uniform grid, in either the position or the
/// momentum representation. Momentum amplitudes are indexed in FFT order.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Grid1D,
    amplitudes: Vec<C64>,
    representation: Representation,
    hbar: f64,
}

impl WaveFunction {
    pub fn new(
        grid: Grid1D,
        amplitudes: Vec<C64>,
        representation: Representation,
        hbar: f64,
    ) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::param(format!(
                "amplitude length {} does not match grid size {}",
                amplitudes.len(),
                grid.len()
            )));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::param(format!("hbar must be positive, got {hbar}")));
        }
        if amplitudes.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::Numerical("non-finite amplitude".into()));
        }
        Ok(Self {
            grid,
            amplitudes,
            representation,
            hbar,
        })
    }

    /// Position-space state sampled from `f`.
    pub fn from_fn(grid: &Grid1D, hbar: f64, f: impl Fn(f64) -> C64) -> Result<Self> {
        let amps = grid.positions().into_iter().map(f).collect();
        Self::new(grid.clone(), amps, Representation::Position, hbar)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Quadrature weight of one sample in the current representation.
    pub fn spacing(&self) -> f64 {
        match self.representation {
            Representation::Position => self.grid.dq(),
            Representation::Momentum => self.grid.dk(),
        }
    }

    /// `∫|ψ|²`.
    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.spacing()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm();
        if norm <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let s = 1.0 / norm.sqrt();
        self.amplitudes.iter_mut().for_each(|a| *a *= s);
        Ok(self)
    }

    /// Same grid and representation, new amplitudes.
    pub fn with_amplitudes(&self, amplitudes: Vec<C64>) -> Result<Self> {
        Self::new(
            self.grid.clone(),
            amplitudes,
            self.representation,
            self.hbar,
        )
    }

    pub fn require(&self, representation: Representation) -> Result<()> {
        if self.representation == representation {
            Ok(())
        } else {
            Err(Error::RepresentationMismatch {
                expected: representation.name(),
                found: self.representation.name(),
            })
        }
    }

    pub fn to_momentum(&self) -> Result<Self> {
        match self.representation {
            Representation::Momentum => Ok(self.clone()),
            Representation::Position => fourier_transform(self, Direction::Forward),
        }
    }

    pub fn to_position(&self) -> Result<Self> {
        match self.representation {
            Representation::Position => Ok(self.clone()),
            Representation::Momentum => fourier_transform(self, Direction::Inverse),
        }
    }
}

/// Unitary Fourier transform with the symmetric `1/√(2π)` convention.
pub fn fourier_transform(psi: &WaveFunction, direction: Direction) -> Result<WaveFunction> {
    let transform = SpectralTransform::new(psi.grid());
    let mut data = psi.amplitudes().to_vec();
    let representation = match direction {
        Direction::Forward => {
            psi.require(Representation::Position)?;
            transform.forward_in_place(&mut data);
            Representation::Momentum
        }
        Direction::Inverse => {
            psi.require(Representation::Momentum)?;
            transform.inverse_in_place(&mut data);
            Representation::Position
        }
    };
    WaveFunction::new(psi.grid().clone(), data, representation, psi.hbar())
}

/// Fraction of the position-space norm carried by the outer `n/64` samples
/// on either side of the box.
pub fn edge_mass_fraction(psi: &WaveFunction) -> Result<f64> {
    let psi = psi.to_position()?;
    let n = psi.grid().len();
    let band = (n / 64).max(1);
    let amps = psi.amplitudes();
    let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if total <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    let edge: f64 = amps[..band]
        .iter()
        .chain(&amps[n - band..])
        .map(|a| a.norm_sqr())
        .sum();
    Ok(edge / total)
}

/// Normalised Gaussian packet `exp(−(q−c)²/(2w²)) · exp(i k0 q)`.
pub fn make_gaussian(
    grid: &Grid1D,
    center: f64,
    width: f64,
    k0: f64,
    hbar: f64,
) -> Result<WaveFunction> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::param(format!("width must be positive, got {width}")));
    }
    if center - 5.0 * width < grid.q_min() || center + 5.0 * width > grid.q_max() {
        return Err(Error::param(format!(
            "packet centre {center} ± 5·{width} does not fit inside [{}, {}]",
            grid.q_min(),
            grid.q_max()
        )));
    }
    let psi = WaveFunction::from_fn(grid, hbar, |q| {
        let x = (q - center) / width;
        C64::from_polar((-0.5 * x * x).exp(), k0 * q)
    })?
    .normalized()?;
    let edge_mass = edge_mass_fraction(&psi)?;
    if edge_mass > EDGE_MASS_LIMIT {
        return Err(Error::BoundaryLeak {
            edge_mass,
            limit: EDGE_MASS_LIMIT,
        });
    }
    Ok(psi)
}
