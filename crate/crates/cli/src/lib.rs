//! Scenario runner for the wavop toolkit: JSON-configured evolutions with
//! CSV/JSON artifacts, Heisenberg series printing and the inverted
//! oscillator demo.

pub mod artifacts;
pub mod chaos;
pub mod config;
pub mod errata;
pub mod error;
pub mod heisenberg;
pub mod scenario;

pub use artifacts::{Comparison, ComparisonRow, Frame, Metadata, MethodRun, RunArtifacts};
pub use chaos::{chaos_demo, ChaosOptions, ChaosReport, ChaosRun};
pub use config::{HamiltonianConfig, InitialState, Method, Output, ScenarioConfig};
pub use error::{CliError, CliResult};
pub use heisenberg::{heisenberg_print, Observable};
pub use scenario::{execute_scenario, plane_wave_packet, Scenario};
