use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use wavop::propagators::{DispersionRelation, HarmonicTruncation};
use wavop::wavefield::PlateauWindow;
use wavop::C64;

/// Largest operator-series order accepted from a config.
pub const MAX_SERIES_ORDER: usize = 40;
/// Largest oracle step count per time segment.
pub const MAX_ORACLE_STEPS: usize = 1_000_000;

fn one() -> f64 {
    1.0
}

/// A scenario read from a JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub hamiltonian: HamiltonianConfig,
    pub initial_state: InitialState,
    /// One method, or two to be compared.
    pub methods: Vec<Method>,
    pub grid: GridConfig,
    pub times: Vec<f64>,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default)]
    pub outputs: Vec<Output>,
    /// Cutoff control for harmonic polynomial evolution.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial_truncation: Option<HarmonicTruncation>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianConfig {
    Free {
        #[serde(default = "one")]
        mass: f64,
    },
    ConstantForce {
        #[serde(default = "one")]
        mass: f64,
        force: f64,
    },
    Harmonic {
        #[serde(default = "one")]
        mass: f64,
        omega: f64,
    },
    InvertedHarmonic {
        #[serde(default = "one")]
        mass: f64,
        lambda: f64,
    },
    /// `p̂²/2m + Σ potential[n]·q̂ⁿ`.
    PolynomialPotential {
        #[serde(default = "one")]
        mass: f64,
        potential: Vec<f64>,
    },
    /// Free particle with an arbitrary dispersion relation; Fourier only.
    Dispersive { dispersion: DispersionRelation },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    /// `exp(−(q−center)²/(2·width²))·e^{i·k0·q}`, normalized.
    Gaussian {
        center: f64,
        width: f64,
        #[serde(default)]
        k0: f64,
    },
    /// `Σ coefficients[n]·qⁿ`. Grid methods see it through `window`.
    Polynomial {
        coefficients: Vec<ComplexValue>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window: Option<PlateauWindow>,
    },
    /// Gaussian momentum profile around `k0` with every component at
    /// `k ≤ 0` removed, centred at `center`.
    PlaneWavePacket { center: f64, k0: f64, spread: f64 },
}

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    pub fn value(self) -> C64 {
        match self {
            ComplexValue::Real(re) => C64::new(re, 0.0),
            ComplexValue::Pair([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Fourier,
    Polynomial,
    OperatorSeries { order: usize },
    /// Split-step integration with `steps` steps between consecutive times.
    Oracle { steps: usize },
}

impl Method {
    pub fn label(&self) -> String {
        match self {
            Method::Fourier => "fourier".into(),
            Method::Polynomial => "polynomial".into(),
            Method::OperatorSeries { order } => format!("operator_series({order})"),
            Method::Oracle { steps } => format!("oracle({steps})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_points: usize,
    pub q_min: f64,
    pub q_max: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    DensityCsv(PathBuf),
    ObservablesCsv(PathBuf),
    ComparisonJson(PathBuf),
    MetadataJson(PathBuf),
}
