use wavop::opalgebra::coefficients::{exact, real};
use wavop::opalgebra::{HamiltonianKind, HamiltonianSpec, Monomial, OperatorPolynomial};
use wavop::oracle::{split_step_evolve, PotentialGrid};
use wavop::propagators::{
    evolve_by_operator_series, evolve_constant_force_fourier, evolve_free_fourier,
    evolve_harmonic_fourier, evolve_polynomial_by_operator_series, evolve_polynomial_state,
    DispersionRelation, Evolution, PolynomialState, Warning,
};
use wavop::wavefield::{
    compare, edge_mass_fraction, make_gaussian, observables, Grid1D, PlateauWindow,
    Representation, WaveFunction, EDGE_MASS_LIMIT,
};
use wavop::C64;

use crate::artifacts::{
    Comparison, ComparisonRow, Frame, Metadata, MethodRun, RunArtifacts, RunWarning,
};
use crate::config::{
    HamiltonianConfig, InitialState, Method, Output, ScenarioConfig, MAX_ORACLE_STEPS,
    MAX_SERIES_ORDER,
};
use crate::errata;
use crate::error::{CliError, CliResult};

enum Initial {
    Grid(WaveFunction),
    Polynomial {
        state: PolynomialState,
        window: Option<PlateauWindow>,
        windowed: Option<WaveFunction>,
    },
}

impl Initial {
    fn grid_state(&self) -> Option<&WaveFunction> {
        match self {
            Initial::Grid(psi) => Some(psi),
            Initial::Polynomial { windowed, .. } => windowed.as_ref(),
        }
    }
}

/// A config that passed validation, with every physical object built.
pub struct Scenario {
    config: ScenarioConfig,
    grid: Grid1D,
    hamiltonian: Option<HamiltonianSpec>,
    dispersion: Option<DispersionRelation>,
    initial: Initial,
}

fn core(path: &str) -> impl Fn(wavop::Error) -> CliError + '_ {
    move |e| CliError::from_core(path, e)
}

fn build_hamiltonian(
    config: &HamiltonianConfig,
    hbar: f64,
) -> CliResult<(Option<HamiltonianSpec>, Option<DispersionRelation>)> {
    let path = "hamiltonian";
    let spec = |kind| HamiltonianSpec::new(kind, hbar).map_err(core(path));
    Ok(match config {
        HamiltonianConfig::Free { mass } => (
            Some(spec(HamiltonianKind::Free { mass: *mass })?),
            Some(DispersionRelation::NonRelativistic { mass: *mass }),
        ),
        HamiltonianConfig::ConstantForce { mass, force } => (
            Some(spec(HamiltonianKind::ConstantForce { mass: *mass, force: *force })?),
            None,
        ),
        HamiltonianConfig::Harmonic { mass, omega } => (
            Some(spec(HamiltonianKind::Harmonic { mass: *mass, omega: *omega })?),
            None,
        ),
        HamiltonianConfig::InvertedHarmonic { mass, lambda } => (
            Some(spec(HamiltonianKind::InvertedHarmonic { mass: *mass, lambda: *lambda })?),
            None,
        ),
        HamiltonianConfig::PolynomialPotential { mass, potential } => {
            if !(*mass > 0.0 && mass.is_finite()) {
                return Err(CliError::at("hamiltonian.mass", format!("must be positive, got {mass}")));
            }
            let mut op = OperatorPolynomial::term(
                Monomial::new(0, 2, 0),
                real(exact(0.5) / exact(*mass)),
            );
            for (n, c) in potential.iter().enumerate() {
                if !c.is_finite() {
                    return Err(CliError::at(format!("hamiltonian.potential[{n}]"), "must be finite"));
                }
                if *c != 0.0 {
                    op = op + OperatorPolynomial::term(Monomial::new(n as u32, 0, 0), real(exact(*c)));
                }
            }
            (Some(spec(HamiltonianKind::Custom(op))?), None)
        }
        HamiltonianConfig::Dispersive { dispersion } => {
            dispersion.validate().map_err(core("hamiltonian.dispersion"))?;
            let h = match dispersion {
                DispersionRelation::NonRelativistic { mass } => {
                    Some(spec(HamiltonianKind::Free { mass: *mass })?)
                }
                _ => None,
            };
            (h, Some(*dispersion))
        }
    })
}

/// Packet with a Gaussian momentum profile restricted to `k > 0`.
pub fn plane_wave_packet(
    grid: &Grid1D,
    center: f64,
    k0: f64,
    spread: f64,
    hbar: f64,
) -> wavop::Result<WaveFunction> {
    if !(spread > 0.0 && spread.is_finite() && k0.is_finite() && center.is_finite()) {
        return Err(wavop::Error::param(format!(
            "plane wave packet needs positive spread, got spread {spread}, k0 {k0}"
        )));
    }
    let amplitudes = grid
        .wavenumbers()
        .into_iter()
        .map(|k| {
            if k <= 0.0 {
                C64::new(0.0, 0.0)
            } else {
                let x = (k - k0) / spread;
                C64::from_polar((-0.5 * x * x).exp(), -k * center)
            }
        })
        .collect();
    let psi = WaveFunction::new(grid.clone(), amplitudes, Representation::Momentum, hbar)?
        .to_position()?
        .normalized()?;
    let edge_mass = edge_mass_fraction(&psi)?;
    if edge_mass > EDGE_MASS_LIMIT {
        return Err(wavop::Error::BoundaryLeak {
            edge_mass,
            limit: EDGE_MASS_LIMIT,
        });
    }
    Ok(psi)
}

fn build_initial(config: &ScenarioConfig, grid: &Grid1D, mass: f64) -> CliResult<Initial> {
    let path = "initial_state";
    let hbar = config.hbar;
    Ok(match &config.initial_state {
        InitialState::Gaussian { center, width, k0 } => Initial::Grid(
            make_gaussian(grid, *center, *width, *k0, hbar)
                .map_err(|e| CliError::at(path, e))?,
        ),
        InitialState::PlaneWavePacket { center, k0, spread } => Initial::Grid(
            plane_wave_packet(grid, *center, *k0, *spread, hbar).map_err(|e| CliError::at(path, e))?,
        ),
        InitialState::Polynomial { coefficients, window } => {
            if coefficients.is_empty() {
                return Err(CliError::at("initial_state.coefficients", "must not be empty"));
            }
            let state = PolynomialState::new(
                coefficients.iter().map(|c| c.value()).collect(),
                hbar,
                mass,
            )
            .map_err(|e| CliError::at("initial_state.coefficients", e))?;
            if let Some(w) = window {
                PlateauWindow::new(w.center, w.plateau, w.support)
                    .map_err(|e| CliError::at("initial_state.window", e))?;
            }
            let windowed = window
                .map(|w| state.windowed(grid, &w))
                .transpose()
                .map_err(|e| CliError::at("initial_state.window", e))?;
            Initial::Polynomial {
                state,
                window: *window,
                windowed,
            }
        }
    })
}

impl Scenario {
    /// Check every field and method/Hamiltonian pairing before any evolution.
    pub fn validate(config: ScenarioConfig) -> CliResult<Self> {
        if !(config.hbar > 0.0 && config.hbar.is_finite()) {
            return Err(CliError::at("hbar", format!("must be positive, got {}", config.hbar)));
        }
        let g = &config.grid;
        let grid = Grid1D::new(g.n_points, g.q_min, g.q_max).map_err(|e| CliError::at("grid", e))?;
        if config.times.is_empty() {
            return Err(CliError::at("times", "at least one time is required"));
        }
        for (i, t) in config.times.iter().enumerate() {
            if !t.is_finite() {
                return Err(CliError::at(format!("times[{i}]"), "must be finite"));
            }
            if i > 0 && *t <= config.times[i - 1] {
                return Err(CliError::at(
                    format!("times[{i}]"),
                    format!("times must be strictly ascending, {t} follows {}", config.times[i - 1]),
                ));
            }
        }
        match config.methods.len() {
            1 | 2 => {}
            n => return Err(CliError::at("methods", format!("expected one or two methods, got {n}"))),
        }
        if config.methods.len() == 2 && config.methods[0] == config.methods[1] {
            return Err(CliError::at("methods[1]", "compares a method with itself"));
        }
        for (i, output) in config.outputs.iter().enumerate() {
            if matches!(output, Output::ComparisonJson(_)) && config.methods.len() != 2 {
                return Err(CliError::at(format!("outputs[{i}]"), "comparison_json needs two methods"));
            }
        }
        if let Some(t) = &config.polynomial_truncation {
            if !(t.window > 0.0 && t.tolerance > 0.0) {
                return Err(CliError::at(
                    "polynomial_truncation",
                    "window and tolerance must be positive",
                ));
            }
        }

        let (hamiltonian, dispersion) = build_hamiltonian(&config.hamiltonian, config.hbar)?;
        let mass = hamiltonian
            .as_ref()
            .and_then(|h| h.mass())
            .or(match config.hamiltonian {
                HamiltonianConfig::PolynomialPotential { mass, .. } => Some(mass),
                _ => None,
            })
            .unwrap_or(1.0);
        let initial = build_initial(&config, &grid, mass)?;
        let scenario = Self {
            config,
            grid,
            hamiltonian,
            dispersion,
            initial,
        };
        for (i, method) in scenario.config.methods.iter().enumerate() {
            scenario.check_method(method).map_err(|m| CliError::at(format!("methods[{i}]"), m))?;
        }
        Ok(scenario)
    }

    fn kind(&self) -> Option<&HamiltonianKind> {
        self.hamiltonian.as_ref().map(|h| h.kind())
    }

    fn kind_name(&self) -> String {
        match (&self.hamiltonian, &self.dispersion) {
            (Some(h), _) => h.name().to_string(),
            (None, Some(d)) => format!("dispersive {d:?}"),
            (None, None) => "unknown".into(),
        }
    }

    fn check_method(&self, method: &Method) -> Result<(), String> {
        let polynomial_state = matches!(self.initial, Initial::Polynomial { .. });
        let needs_grid_state = || {
            if self.initial.grid_state().is_none() {
                Err(format!(
                    "{} needs a grid state; give the polynomial initial state a window",
                    method.label()
                ))
            } else {
                Ok(())
            }
        };
        match method {
            Method::Fourier => {
                needs_grid_state()?;
                let closed = self.dispersion.is_some()
                    || matches!(
                        self.kind(),
                        Some(HamiltonianKind::ConstantForce { .. } | HamiltonianKind::Harmonic { .. })
                    );
                if !closed {
                    return Err(format!(
                        "fourier evolution has no closed form for {}; use oracle",
                        self.kind_name()
                    ));
                }
            }
            Method::Polynomial => {
                if !polynomial_state {
                    return Err("polynomial method needs a polynomial initial state".into());
                }
                if !matches!(
                    self.kind(),
                    Some(
                        HamiltonianKind::Free { .. }
                            | HamiltonianKind::ConstantForce { .. }
                            | HamiltonianKind::Harmonic { .. }
                    )
                ) {
                    return Err(format!(
                        "polynomial evolution has no closed form for {}",
                        self.kind_name()
                    ));
                }
            }
            Method::OperatorSeries { order } => {
                if *order > MAX_SERIES_ORDER {
                    return Err(format!("order {order} exceeds the limit {MAX_SERIES_ORDER}"));
                }
                let h = self
                    .hamiltonian
                    .as_ref()
                    .ok_or_else(|| format!("operator series needs a polynomial Hamiltonian, not {}", self.kind_name()))?;
                if !polynomial_state && !h.is_quadratic() {
                    return Err(format!(
                        "operator series on a grid state needs a quadratic Hamiltonian, {} is not",
                        h.name()
                    ));
                }
            }
            Method::Oracle { steps } => {
                needs_grid_state()?;
                if *steps == 0 || *steps > MAX_ORACLE_STEPS {
                    return Err(format!("steps must be in 1..={MAX_ORACLE_STEPS}, got {steps}"));
                }
                if self.hamiltonian.as_ref().and_then(|h| h.potential()).is_none() {
                    return Err(format!(
                        "the split-step oracle needs p²/2m + V(q), not {}",
                        self.kind_name()
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    fn run_method(&self, method: &Method, warnings: &mut Vec<RunWarning>) -> CliResult<MethodRun> {
        let label = method.label();
        let path = format!("methods.{label}");
        let err = |e| CliError::from_core(&path, e);
        let mut frames = Vec::with_capacity(self.config.times.len());
        let mut note = |t: f64, list: Vec<Warning>| {
            for w in list {
                let message = match w {
                    Warning::BoundaryLeak { edge_mass } => format!("boundary leak, edge mass {edge_mass:e}"),
                    Warning::SeriesDivergence { order, growth } => {
                        format!("series term {order} grew by {growth:e}")
                    }
                };
                warnings.push(RunWarning {
                    method: label.clone(),
                    t,
                    message,
                });
            }
        };

        let push_state = |frames: &mut Vec<Frame>, t: f64, state: WaveFunction| -> CliResult<()> {
            let observables = observables(&state).map_err(|e| CliError::from_core(&path, e))?;
            frames.push(Frame {
                t,
                values: state.into_amplitudes(),
                observables,
            });
            Ok(())
        };

        match method {
            Method::Oracle { steps } => {
                let h = self.hamiltonian.as_ref().expect("checked during validation");
                let (mass, v) = PotentialGrid::from_hamiltonian(h, &self.grid).map_err(err)?;
                let mut state = self.initial.grid_state().expect("checked").clone();
                let mut now = 0.0;
                for &t in &self.config.times {
                    state = split_step_evolve(&state, &v, t - now, *steps, mass).map_err(err)?;
                    now = t;
                    let leak = edge_mass_fraction(&state).map_err(err)?;
                    if leak > wavop::propagators::LEAK_WARNING_LIMIT {
                        note(t, vec![Warning::BoundaryLeak { edge_mass: leak }]);
                    }
                    push_state(&mut frames, t, state.clone())?;
                }
            }
            Method::Fourier => {
                let psi = self.initial.grid_state().expect("checked");
                for &t in &self.config.times {
                    let evolution = self.fourier(psi, t).map_err(err)?;
                    note(t, evolution.warnings);
                    push_state(&mut frames, t, evolution.state)?;
                }
            }
            Method::OperatorSeries { order } => {
                let h = self.hamiltonian.as_ref().expect("checked");
                for &t in &self.config.times {
                    match &self.initial {
                        Initial::Grid(psi) => {
                            let evolution = evolve_by_operator_series(psi, h, t, *order).map_err(err)?;
                            note(t, evolution.warnings);
                            push_state(&mut frames, t, evolution.state)?;
                        }
                        Initial::Polynomial { state, window, .. } => {
                            let out = evolve_polynomial_by_operator_series(state, h, t, *order).map_err(err)?;
                            note(t, out.warnings);
                            let sampled = self.sample(|q| out.polynomial.evaluate(q), window).map_err(err)?;
                            push_state(&mut frames, t, sampled)?;
                        }
                    }
                }
            }
            Method::Polynomial => {
                let h = self.hamiltonian.as_ref().expect("checked");
                let Initial::Polynomial { state, window, .. } = &self.initial else {
                    unreachable!("checked during validation")
                };
                let truncation = self.config.polynomial_truncation.unwrap_or_default();
                for &t in &self.config.times {
                    let out = evolve_polynomial_state(state, h, t, &truncation).map_err(err)?;
                    let sampled = self.sample(|q| out.evaluate(q), window).map_err(err)?;
                    push_state(&mut frames, t, sampled)?;
                }
            }
        }
        Ok(MethodRun {
            method: label,
            frames,
        })
    }

    fn fourier(&self, psi: &WaveFunction, t: f64) -> wavop::Result<Evolution> {
        if let Some(d) = &self.dispersion {
            return evolve_free_fourier(psi, t, d);
        }
        match self.kind() {
            Some(HamiltonianKind::ConstantForce { mass, force }) => {
                evolve_constant_force_fourier(psi, t, *force, *mass)
            }
            Some(HamiltonianKind::Harmonic { mass, omega }) => {
                evolve_harmonic_fourier(psi, t, *omega, *mass)
            }
            _ => unreachable!("checked during validation"),
        }
    }

    fn sample(
        &self,
        f: impl Fn(f64) -> C64,
        window: &Option<PlateauWindow>,
    ) -> wavop::Result<WaveFunction> {
        WaveFunction::from_fn(&self.grid, self.config.hbar, |q| {
            f(q) * window.map_or(1.0, |w| w.value(q))
        })
    }

    pub fn execute(&self) -> CliResult<RunArtifacts> {
        let mut warnings = Vec::new();
        let runs = self
            .config
            .methods
            .iter()
            .map(|m| self.run_method(m, &mut warnings))
            .collect::<CliResult<Vec<_>>>()?;
        let comparison = if runs.len() == 2 {
            let rows = runs[0]
                .frames
                .iter()
                .zip(&runs[1].frames)
                .map(|(a, b)| {
                    let to_state = |f: &Frame| {
                        WaveFunction::new(
                            self.grid.clone(),
                            f.values.clone(),
                            Representation::Position,
                            self.config.hbar,
                        )
                    };
                    let report = compare(&to_state(a)?, &to_state(b)?)?;
                    Ok(ComparisonRow {
                        t: a.t,
                        l2_distance: report.l2_distance,
                        fidelity: report.fidelity,
                        max_pointwise: report.max_pointwise,
                    })
                })
                .collect::<wavop::Result<Vec<_>>>()
                .map_err(|e| CliError::from_core("comparison", e))?;
            Some(Comparison {
                method_a: runs[0].method.clone(),
                method_b: runs[1].method.clone(),
                rows,
            })
        } else {
            None
        };
        let echo = serde_json::to_value(&self.config).expect("config serializes");
        let mut metadata = Metadata::new(echo, errata::exercised(self.kind(), &self.config.methods));
        metadata.warnings = warnings;
        Ok(RunArtifacts {
            grid: self.grid.clone(),
            runs,
            comparison,
            metadata,
        })
    }
}

/// Validate `config` and run every method it names.
pub fn execute_scenario(config: ScenarioConfig) -> CliResult<RunArtifacts> {
    Scenario::validate(config)?.execute()
}
