use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::evolution::Evolution;
use super::kernel::make_kernel;
use crate::error::{Error, Result};
use crate::opalgebra::HamiltonianSpec;
use crate::wavefield::{Grid1D, Representation, SpectralTransform, WaveFunction};
use crate::C64;

/// Evolution under `p̂²/2m − F·q̂`.
///
/// Free dispersion on each momentum component, a drift of the whole packet
/// by `Ft²/2m`, then multiplication by the kernel
/// `e^{−iF²t³/(6mħ)}·e^{iFtq/ħ}`.
pub fn evolve_constant_force_fourier(
    psi: &WaveFunction,
    t: f64,
    force: f64,
    mass: f64,
) -> Result<Evolution> {
    psi.require(Representation::Position)?;
    let hbar = psi.hbar();
    let kernel = make_kernel(&HamiltonianSpec::constant_force(mass, force, hbar)?, t)?;
    let drift = force * t * t / (2.0 * mass);
    let transform = SpectralTransform::new(psi.grid());
    let mut data = psi.amplitudes().to_vec();
    transform.multiply_in_momentum(&mut data, |k| {
        C64::from_polar(1.0, -hbar * k * k * t / (2.0 * mass) - k * drift)
    });
    for (a, q) in data.iter_mut().zip(psi.grid().positions()) {
        *a *= kernel.evaluate(q);
    }
    Evolution::checked(psi.with_amplitudes(data)?)
}

/// Evolution under `p̂²/2m + mω²q̂²/2`.
///
/// `ωt` is split into whole quarter periods and a remainder `|θ| ≤ π/4`.
/// A quarter period maps `ψ(q)` to `e^{−iπ/4}/q0 · A(q/q0²)`, with `A` the
/// momentum amplitude. The remainder acts as a lens:
/// `cos(θ)^{−1/2}·e^{−i·tan(θ)·q²/(2q0²)}·f(q/cos θ)`, where `f` is `ψ` freely
/// evolved for `tan(θ)/ω`. Both steps evaluate the Fourier sums directly at
/// off-grid points, so the cost is `O(N²)`.
pub fn evolve_harmonic_fourier(psi: &WaveFunction, t: f64, omega: f64, mass: f64) -> Result<Evolution> {
    psi.require(Representation::Position)?;
    if !(omega > 0.0 && omega.is_finite() && mass > 0.0 && mass.is_finite() && t.is_finite()) {
        return Err(Error::param(format!(
            "harmonic evolution needs positive omega and mass, got omega {omega}, mass {mass}"
        )));
    }
    let hbar = psi.hbar();
    let grid = psi.grid();
    let q0 = (hbar / (mass * omega)).sqrt();
    let theta = omega * t;
    let quarters = (theta / FRAC_PI_2).round();
    let remainder = theta - quarters * FRAC_PI_2;
    let quarters = quarters as i64;

    let mut data = psi.amplitudes().to_vec();
    let applied = quarters.rem_euclid(4);
    for _ in 0..applied {
        data = quarter_period(&data, grid, q0);
    }
    // four quarter periods multiply the state by −1
    if (quarters - applied) / 4 % 2 != 0 {
        for a in &mut data {
            *a = -*a;
        }
    }
    if remainder != 0.0 {
        data = lens(&data, grid, remainder, q0, omega, mass, hbar);
    }
    if data.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
        return Err(Error::Numerical("harmonic evolution produced non-finite amplitudes".into()));
    }
    Evolution::checked(psi.with_amplitudes(data)?)
}

/// `Σ_l c_l·e^{i(a + l·d)·x}` by a phase recurrence, reseeded periodically.
fn exp_sum(c: &[C64], a: f64, d: f64, x: f64) -> C64 {
    const RESEED: usize = 64;
    let step = C64::from_polar(1.0, d * x);
    let mut phase = C64::new(1.0, 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for (l, cl) in c.iter().enumerate() {
        if l % RESEED == 0 {
            phase = C64::from_polar(1.0, l as f64 * d * x);
        }
        acc += cl * phase;
        phase *= step;
    }
    acc * C64::from_polar(1.0, a * x)
}

fn quarter_period(data: &[C64], grid: &Grid1D, q0: f64) -> Vec<C64> {
    let norm = grid.dq() / (2.0 * PI).sqrt();
    let front = C64::from_polar(1.0 / q0, -FRAC_PI_4);
    grid.positions()
        .into_iter()
        .map(|q| {
            let kappa = q / (q0 * q0);
            if kappa.abs() > grid.k_max() {
                C64::new(0.0, 0.0)
            } else {
                front * norm * exp_sum(data, grid.q_min(), grid.dq(), -kappa)
            }
        })
        .collect()
}

fn lens(
    data: &[C64],
    grid: &Grid1D,
    theta: f64,
    q0: f64,
    omega: f64,
    mass: f64,
    hbar: f64,
) -> Vec<C64> {
    let n = grid.len();
    let (sin, cos) = theta.sin_cos();
    let tan = sin / cos;
    let t_eff = tan / omega;
    let transform = SpectralTransform::new(grid);
    let momentum = transform.forward(data);
    // wavenumbers sorted ascending from −n/2·dk
    let dk = grid.dk();
    let k_first = -((n / 2) as f64) * dk;
    let norm = dk / (2.0 * PI).sqrt();
    let sorted: Vec<C64> = (0..n)
        .map(|i| {
            let j = (i + n / 2) % n;
            let k = grid.wavenumber(j);
            momentum[j] * norm * C64::from_polar(1.0, -hbar * k * k * t_eff / (2.0 * mass))
        })
        .collect();
    let front = cos.powf(-0.5);
    grid.positions()
        .into_iter()
        .map(|q| {
            let x = q / cos;
            if x < grid.q_min() || x >= grid.q_max() {
                return C64::new(0.0, 0.0);
            }
            let chirp = C64::from_polar(front, -tan * q * q / (2.0 * q0 * q0));
            chirp * exp_sum(&sorted, k_first, dk, x)
        })
        .collect()
}
