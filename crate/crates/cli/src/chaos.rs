use std::f64::consts::PI;

use serde::Serialize;
use wavop::oracle::{split_step_evolve, PotentialGrid};
use wavop::propagators::LEAK_WARNING_LIMIT;
use wavop::wavefield::{edge_mass_fraction, make_gaussian, observables, Grid1D};

use crate::artifacts::{pretty, Frame, Metadata, MethodRun, RunArtifacts, RunWarning};
use crate::error::{CliError, CliResult};

/// Standard deviations of the packet that the automatic grid spans, in
/// both position and wavenumber.
const COVERAGE: f64 = 6.0;
/// Relative margin by which the neighbours of `q = 0` must exceed the
/// density there to count as a dip.
const DIP_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChaosOptions {
    pub lambda: f64,
    pub width: f64,
    pub t_max: f64,
    /// Number of equally spaced output times in `[0, t_max]`.
    pub samples: usize,
    pub mass: f64,
    pub hbar: f64,
    pub max_points: usize,
    pub steps_per_unit_time: usize,
}

impl ChaosOptions {
    pub fn new(lambda: f64, width: f64, t_max: f64, samples: usize) -> Self {
        Self {
            lambda,
            width,
            t_max,
            samples,
            mass: 1.0,
            hbar: 1.0,
            max_points: 4096,
            steps_per_unit_time: 2000,
        }
    }

    fn validate(&self) -> CliResult<()> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(CliError::at(name, format!("must be positive, got {x}")))
            }
        };
        positive("lambda", self.lambda)?;
        positive("width", self.width)?;
        positive("tmax", self.t_max)?;
        positive("mass", self.mass)?;
        positive("hbar", self.hbar)?;
        if self.samples < 2 {
            return Err(CliError::at("samples", "at least two samples are needed"));
        }
        if self.max_points < 64 || !self.max_points.is_power_of_two() {
            return Err(CliError::at("max_points", "must be a power of two, at least 64"));
        }
        if self.steps_per_unit_time == 0 {
            return Err(CliError::at("steps_per_unit_time", "must be positive"));
        }
        Ok(())
    }

    /// `(Var q, Var p)` at time `t` for the packet `exp(−q²/(2w²))` under
    /// `p²/2m − mλ²q²/2`.
    pub fn closed_form_variances(&self, t: f64) -> (f64, f64) {
        let (m, l, w, hbar) = (self.mass, self.lambda, self.width, self.hbar);
        let var_q0 = 0.5 * w * w;
        let var_p0 = 0.5 * hbar * hbar / (w * w);
        let (c, s) = ((l * t).cosh(), (l * t).sinh());
        let mw = m * l;
        (
            var_q0 * c * c + var_p0 / (mw * mw) * s * s,
            var_p0 * c * c + mw * mw * var_q0 * s * s,
        )
    }

    /// Symmetric grid wide and fine enough for the packet at `t_max`;
    /// the flag is set when `max_points` forced a coarser grid.
    pub fn grid(&self) -> CliResult<(Grid1D, bool)> {
        let (var_q, var_p) = self.closed_form_variances(self.t_max);
        let half = COVERAGE * var_q.sqrt();
        let dq = PI * self.hbar / (COVERAGE * var_p.sqrt());
        let mut n = (2.0 * half / dq).ceil() as usize;
        n = n.max(64).next_power_of_two();
        let capped = n > self.max_points;
        if capped {
            n = self.max_points;
        }
        let grid = Grid1D::symmetric(n, half).map_err(|e| CliError::at("grid", e))?;
        Ok((grid, capped))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChaosSample {
    pub t: f64,
    pub left_mass: f64,
    pub right_mass: f64,
    pub asymmetry: f64,
    pub bimodal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChaosReport {
    pub options: ChaosOptions,
    pub n_points: usize,
    pub half_width: f64,
    pub grid_capped: bool,
    pub samples: Vec<ChaosSample>,
    /// First sample time with a density dip at `q = 0` between two peaks.
    pub bimodal_at: Option<f64>,
    /// `[left, right]` mass fractions at `bimodal_at`.
    pub split_at_bimodal: Option<[f64; 2]>,
    pub max_asymmetry: f64,
    /// Time at which the packet reached the box edges; later samples are
    /// missing.
    pub truncated_at: Option<f64>,
}

impl ChaosReport {
    pub fn to_json(&self) -> String {
        pretty(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChaosRun {
    pub artifacts: RunArtifacts,
    pub report: ChaosReport,
}

/// Left and right mass fractions about `q = 0`; samples that are their own
/// parity image are shared equally.
pub fn mass_split(density: &[f64], grid: &Grid1D) -> (f64, f64) {
    let total: f64 = density.iter().sum();
    let mut left = 0.0;
    let mut right = 0.0;
    for (j, rho) in density.iter().enumerate() {
        if grid.mirror_index(j) == j {
            left += 0.5 * rho;
            right += 0.5 * rho;
        } else if grid.position(j) < 0.0 {
            left += rho;
        } else {
            right += rho;
        }
    }
    (left / total, right / total)
}

/// Whether the density has a strict local minimum at the centre sample.
pub fn is_bimodal(density: &[f64], grid: &Grid1D) -> bool {
    let c = grid.len() / 2;
    let peak = density.iter().copied().fold(0.0, f64::max);
    let margin = DIP_MARGIN * peak;
    density[c - 1] > density[c] + margin && density[c + 1] > density[c] + margin
}

/// Evolve a centred Gaussian on the inverted oscillator with the
/// split-step oracle, tracking the left/right split and bimodality.
pub fn chaos_demo(options: ChaosOptions) -> CliResult<ChaosRun> {
    options.validate()?;
    let (grid, grid_capped) = options.grid()?;
    if !grid.is_symmetric() {
        return Err(CliError::at("grid", "chaos grid must be symmetric about 0"));
    }
    let err = |e| CliError::from_core("chaos-demo", e);
    let m = options.mass;
    let l = options.lambda;
    let v = PotentialGrid::from_fn(&grid, |q| -0.5 * m * l * l * q * q).map_err(err)?;
    let mut state = make_gaussian(&grid, 0.0, options.width, 0.0, options.hbar)
        .map_err(|e| CliError::at("width", e))?;

    let mut frames = Vec::new();
    let mut samples = Vec::new();
    let mut warnings = Vec::new();
    let mut truncated_at = None;
    let mut now = 0.0;
    for i in 0..options.samples {
        let t = options.t_max * i as f64 / (options.samples - 1) as f64;
        if t > now {
            let steps = ((t - now) * options.steps_per_unit_time as f64).ceil() as usize;
            state = split_step_evolve(&state, &v, t - now, steps.max(1), m).map_err(err)?;
            now = t;
        }
        let leak = edge_mass_fraction(&state).map_err(err)?;
        if leak > LEAK_WARNING_LIMIT {
            truncated_at = Some(t);
            warnings.push(RunWarning {
                method: "oracle".into(),
                t,
                message: format!("packet reached the box edges (edge mass {leak:e}); run truncated"),
            });
            break;
        }
        let density: Vec<f64> = state.amplitudes().iter().map(|a| a.norm_sqr()).collect();
        let (left, right) = mass_split(&density, &grid);
        samples.push(ChaosSample {
            t,
            left_mass: left,
            right_mass: right,
            asymmetry: (right - left).abs(),
            bimodal: is_bimodal(&density, &grid),
        });
        frames.push(Frame {
            t,
            values: state.amplitudes().to_vec(),
            observables: observables(&state).map_err(err)?,
        });
    }
    if grid_capped {
        warnings.push(RunWarning {
            method: "oracle".into(),
            t: 0.0,
            message: format!(
                "grid capped at {} points; wavenumber coverage below {COVERAGE} standard deviations",
                grid.len()
            ),
        });
    }

    let first_bimodal = samples.iter().find(|s| s.bimodal);
    let report = ChaosReport {
        options,
        n_points: grid.len(),
        half_width: 0.5 * grid.length(),
        grid_capped,
        bimodal_at: first_bimodal.map(|s| s.t),
        split_at_bimodal: first_bimodal.map(|s| [s.left_mass, s.right_mass]),
        max_asymmetry: samples.iter().map(|s| s.asymmetry).fold(0.0, f64::max),
        samples,
        truncated_at,
    };
    let mut metadata = Metadata::new(
        serde_json::to_value(options).expect("options serialize"),
        Vec::new(),
    );
    metadata.warnings = warnings;
    Ok(ChaosRun {
        artifacts: RunArtifacts {
            grid,
            runs: vec![MethodRun {
                method: "oracle".into(),
                frames,
            }],
            comparison: None,
            metadata,
        },
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_shares_self_mirrored_points() {
        let grid = Grid1D::symmetric(8, 4.0).unwrap();
        let density = vec![1.0; 8];
        let (l, r) = mass_split(&density, &grid);
        assert_eq!((l, r), (0.5, 0.5));
    }

    #[test]
    fn dip_detection() {
        let grid = Grid1D::symmetric(8, 4.0).unwrap();
        let two_peaks: Vec<f64> = grid.positions().iter().map(|q| (-(q.abs() - 2.0).powi(2)).exp()).collect();
        assert!(is_bimodal(&two_peaks, &grid));
        let one_peak: Vec<f64> = grid.positions().iter().map(|q| (-q * q).exp()).collect();
        assert!(!is_bimodal(&one_peak, &grid));
    }

    #[test]
    fn variances_start_at_gaussian_values() {
        let o = ChaosOptions::new(1.0, 0.5, 3.0, 4);
        let (vq, vp) = o.closed_form_variances(0.0);
        assert!((vq - 0.125).abs() < 1e-15 && (vp - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_options() {
        assert!(chaos_demo(ChaosOptions::new(-1.0, 0.5, 1.0, 4)).is_err());
        assert!(chaos_demo(ChaosOptions::new(1.0, 0.5, 1.0, 1)).is_err());
    }
}
