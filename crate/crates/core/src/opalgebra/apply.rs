use super::polynomial::OperatorPolynomial;
use crate::error::{Error, Result};
use crate::wavefield::{Representation, SpectralTransform, WaveFunction};
use crate::C64;

/// Natural log of the largest spectral amplification `(ħ k_max)^b` allowed.
const LOG_AMPLIFICATION_LIMIT: f64 = 600.0;

/// Apply a normal-ordered operator polynomial to a position-space state.
///
/// Each `q̂^a p̂^b` acts as `b` spectral derivatives (`(ħk)^b` in momentum
/// space) followed by pointwise multiplication by `q^a`. `ħ` powers in the
/// coefficients are evaluated with the state's `ħ`.
pub fn apply_operator_polynomial(poly: &OperatorPolynomial, psi: &WaveFunction) -> Result<WaveFunction> {
    psi.require(Representation::Position)?;
    let grid = psi.grid();
    let hbar = psi.hbar();
    let terms = poly.numeric_terms(hbar);
    let hk_max = hbar * grid.k_max();

    if let Some(&(_, b)) = terms.keys().max_by_key(|(_, b)| *b) {
        if b as f64 * hk_max.max(1.0).ln() > LOG_AMPLIFICATION_LIMIT {
            return Err(Error::SpectralOverflow {
                power: b,
                k_max: grid.k_max(),
            });
        }
    }

    let transform = SpectralTransform::new(grid);
    let momentum = transform.forward(psi.amplitudes());
    let positions = grid.positions();
    let mut out = vec![C64::new(0.0, 0.0); grid.len()];

    // group by p power so each derivative order costs one inverse FFT
    let mut p_powers: Vec<u32> = terms.keys().map(|&(_, b)| b).collect();
    p_powers.dedup();
    p_powers.sort_unstable();
    p_powers.dedup();
    for b in p_powers {
        let mut derived: Vec<C64> = momentum
            .iter()
            .enumerate()
            .map(|(j, a)| a * (hbar * grid.wavenumber(j)).powi(b as i32))
            .collect();
        transform.inverse_in_place(&mut derived);
        for (&(a, _), c) in terms.iter().filter(|(&(_, bb), _)| bb == b) {
            for ((o, d), q) in out.iter_mut().zip(&derived).zip(&positions) {
                *o += c * d * q.powi(a as i32);
            }
        }
    }
    psi.with_amplitudes(out)
}
