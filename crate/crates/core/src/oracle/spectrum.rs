use nalgebra::{DMatrix, SymmetricEigen};

use super::PotentialGrid;
use crate::error::{Error, Result};
use crate::wavefield::{Grid1D, PlateauWindow};
use crate::C64;

/// Tolerances asserted on every computed eigenbasis.
const ORTHONORMALITY_TOLERANCE: f64 = 1e-8;
const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Eigenpairs of the grid Hamiltonian `p̂²/2m + V(q̂)`, with the kinetic part
/// taken as the exact spectral (Fourier) operator on the periodic grid.
///
/// Energies ascend. Eigenfunctions are real, normalized so that
/// `Σ φ(q_j)²·dq = 1`, and signed so their largest-magnitude sample is
/// positive.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    grid: Grid1D,
    hbar: f64,
    energies: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
}

impl SpectralDecomposition {
    /// Largest grid handled by the dense diagonalization.
    pub const MAX_POINTS: usize = 2048;

    pub fn compute(v: &PotentialGrid, mass: f64, hbar: f64) -> Result<Self> {
        let grid = v.grid().clone();
        let n = grid.len();
        if n > Self::MAX_POINTS {
            return Err(Error::InvalidGrid(format!(
                "dense diagonalization is limited to {} points, got {n}",
                Self::MAX_POINTS
            )));
        }
        if !(mass > 0.0 && hbar > 0.0) {
            return Err(Error::param(format!("invalid mass {mass} or hbar {hbar}")));
        }
        let h = grid_hamiltonian(&grid, v.values(), mass, hbar);
        let eigen = SymmetricEigen::new(h.clone());

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[a].total_cmp(&eigen.eigenvalues[b]));
        let energies: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
        let mut vectors = DMatrix::<f64>::zeros(n, n);
        for (col, &i) in order.iter().enumerate() {
            let mut v = eigen.eigenvectors.column(i).into_owned();
            let peak = v.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
            if peak < 0.0 {
                v.neg_mut();
            }
            vectors.set_column(col, &v);
        }

        let gram = vectors.transpose() * &vectors;
        let orthonormality = (gram - DMatrix::<f64>::identity(n, n)).amax();
        if orthonormality > ORTHONORMALITY_TOLERANCE {
            return Err(Error::Numerical(format!(
                "eigenbasis orthonormality error {orthonormality:e}"
            )));
        }
        let applied = &h * &vectors;
        for (col, e) in energies.iter().enumerate() {
            let residual = (applied.column(col) - vectors.column(col) * *e).norm();
            if residual > RESIDUAL_TOLERANCE {
                return Err(Error::Numerical(format!(
                    "eigenpair {col} has residual {residual:e}"
                )));
            }
        }

        let scale = 1.0 / grid.dq().sqrt();
        let eigenvectors = (0..n)
            .map(|col| vectors.column(col).iter().map(|x| x * scale).collect())
            .collect();
        Ok(Self {
            grid,
            hbar,
            energies,
            eigenvectors,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn count(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn eigenvector(&self, n: usize) -> &[f64] {
        &self.eigenvectors[n]
    }

    /// Overlaps `⟨φ_n|f⟩` for a real grid function `f`.
    pub fn overlaps(&self, f: &[f64]) -> Vec<f64> {
        let dq = self.grid.dq();
        self.eigenvectors
            .iter()
            .map(|phi| phi.iter().zip(f).map(|(a, b)| a * b).sum::<f64>() * dq)
            .collect()
    }
}

fn grid_hamiltonian(grid: &Grid1D, potential: &[f64], mass: f64, hbar: f64) -> DMatrix<f64> {
    let n = grid.len();
    let energies: Vec<f64> = grid
        .wavenumbers()
        .iter()
        .map(|k| (hbar * k).powi(2) / (2.0 * mass))
        .collect();
    // kinetic matrix depends only on (j − l) mod n
    let dq = grid.dq();
    let row: Vec<f64> = (0..n)
        .map(|d| {
            energies
                .iter()
                .enumerate()
                .map(|(j, e)| e * (grid.wavenumber(j) * d as f64 * dq).cos())
                .sum::<f64>()
                / n as f64
        })
        .collect();
    DMatrix::from_fn(n, n, |j, l| {
        let kinetic = row[(j + n - l) % n];
        if j == l {
            kinetic + potential[j]
        } else {
            kinetic
        }
    })
}

/// Kernel assembled from the spectrum: the windowed unit function expanded
/// in eigenstates, each evolved by its phase.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralKernel {
    pub values: Vec<C64>,
    pub retained: usize,
    /// Largest deviation of the truncated expansion from the window on the
    /// plateau, at `t = 0`.
    pub projection_error: f64,
}

/// `K(q, t) = Σ_{n<retained} e^{−iE_n t/ħ}·φ_n(q)·⟨φ_n|w⟩`, with `w` the
/// plateau window standing in for the unit function.
pub fn kernel_from_spectrum(
    spectrum: &SpectralDecomposition,
    window: &PlateauWindow,
    t: f64,
    retained: usize,
) -> Result<SpectralKernel> {
    if retained == 0 || retained > spectrum.count() {
        return Err(Error::param(format!(
            "retained must be in 1..={}, got {retained}",
            spectrum.count()
        )));
    }
    let grid = spectrum.grid();
    let w = window.sample(grid);
    let overlaps = spectrum.overlaps(&w);
    let mut values = vec![C64::new(0.0, 0.0); grid.len()];
    let mut projection = vec![0.0; grid.len()];
    for (n, &overlap) in overlaps.iter().enumerate().take(retained) {
        let phase = C64::from_polar(overlap, -spectrum.energies()[n] * t / spectrum.hbar());
        for ((v, p), phi) in values.iter_mut().zip(&mut projection).zip(spectrum.eigenvector(n)) {
            *v += phase * phi;
            *p += overlap * phi;
        }
    }
    Ok(SpectralKernel {
        values,
        retained,
        projection_error: plateau_error(grid, window, &projection),
    })
}

fn plateau_error(grid: &Grid1D, window: &PlateauWindow, projection: &[f64]) -> f64 {
    grid.positions()
        .iter()
        .zip(projection)
        .filter(|(q, _)| window.in_plateau(**q))
        .map(|(_, p)| (p - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Fewest lowest eigenstates whose expansion of the window is within
/// `tolerance` of 1 on the plateau.
pub fn retained_for_tolerance(
    spectrum: &SpectralDecomposition,
    window: &PlateauWindow,
    tolerance: f64,
) -> Result<usize> {
    let grid = spectrum.grid();
    let w = window.sample(grid);
    let overlaps = spectrum.overlaps(&w);
    let mut projection = vec![0.0; grid.len()];
    let mut error = f64::INFINITY;
    for (n, c) in overlaps.iter().enumerate() {
        for (p, phi) in projection.iter_mut().zip(spectrum.eigenvector(n)) {
            *p += c * phi;
        }
        error = plateau_error(grid, window, &projection);
        if error <= tolerance {
            return Ok(n + 1);
        }
    }
    Err(Error::Truncation {
        estimate: error,
        tolerance,
    })
}
