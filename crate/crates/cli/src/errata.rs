//! Identifiers for formulas implemented differently from their commonly
//! printed forms. Runs list the ones they exercised in their metadata.

use wavop::opalgebra::HamiltonianKind;

use crate::config::Method;

/// Under `p̂²/2m − Fq̂` the momentum drifts as `p̂ + F·t`, not `p̂ + F·t/m`.
pub const MOMENTUM_DRIFT: &str = "momentum-drift-force-times-time";
/// The constant-force kernel's linear phase is `e^{iFtq/ħ}`, with the factor `t`.
pub const CONSTANT_FORCE_KERNEL_TIME: &str = "constant-force-kernel-time-factor";
/// Free-space polynomial weights are `C(n,l)·(n−l−1)!!`, not `(n−l+1)!`.
pub const FREE_POLYNOMIAL_DOUBLE_FACTORIAL: &str = "free-polynomial-double-factorial";
/// Conjugating by `e^{−q²/(2q0²)}` sends `p̂` to `p̂ + iħq̂/q0²`.
pub const GAUSSIAN_DRESSING: &str = "gaussian-dressing-hbar-over-q0-squared";

/// Errata touched by evolving under `kind` with `method`.
pub fn exercised(kind: Option<&HamiltonianKind>, methods: &[Method]) -> Vec<&'static str> {
    let mut out = Vec::new();
    for method in methods {
        let flags: &[&'static str] = match (kind, method) {
            (Some(HamiltonianKind::ConstantForce { .. }), Method::Fourier) => {
                &[MOMENTUM_DRIFT, CONSTANT_FORCE_KERNEL_TIME]
            }
            (Some(HamiltonianKind::ConstantForce { .. }), Method::Polynomial) => &[
                MOMENTUM_DRIFT,
                CONSTANT_FORCE_KERNEL_TIME,
                FREE_POLYNOMIAL_DOUBLE_FACTORIAL,
            ],
            (Some(HamiltonianKind::Free { .. }), Method::Polynomial) => {
                &[FREE_POLYNOMIAL_DOUBLE_FACTORIAL]
            }
            (Some(HamiltonianKind::Harmonic { .. }), Method::Polynomial) => {
                &[FREE_POLYNOMIAL_DOUBLE_FACTORIAL, GAUSSIAN_DRESSING]
            }
            _ => &[],
        };
        for flag in flags {
            if !out.contains(flag) {
                out.push(*flag);
            }
        }
    }
    out.sort_unstable();
    out
}
