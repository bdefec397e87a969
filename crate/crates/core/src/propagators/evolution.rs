use serde::Serialize;

use crate::error::Result;
use crate::wavefield::{edge_mass_fraction, WaveFunction};

/// Edge-band mass fraction above which an evolved state is flagged.
pub const LEAK_WARNING_LIMIT: f64 = 1e-6;

/// Non-fatal conditions noticed while evolving.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// The evolved state carries visible mass in the edge bands of the box,
    /// so periodic wrap-around may have corrupted it.
    BoundaryLeak { edge_mass: f64 },
    /// The last term of a truncated series was not smaller than the one
    /// before it.
    SeriesDivergence { order: usize, growth: f64 },
}

/// An evolved grid state together with any warnings raised on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub state: WaveFunction,
    pub warnings: Vec<Warning>,
}

impl Evolution {
    pub(crate) fn checked(state: WaveFunction) -> Result<Self> {
        let mut out = Self {
            state,
            warnings: Vec::new(),
        };
        let edge_mass = edge_mass_fraction(&out.state)?;
        if edge_mass > LEAK_WARNING_LIMIT {
            out.warnings.push(Warning::BoundaryLeak { edge_mass });
        }
        Ok(out)
    }

    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }

    pub fn into_state(self) -> WaveFunction {
        self.state
    }
}
