//! Grid-sampled wavefunctions and the operations that act on them directly:
//! unitary Fourier transforms, observables and state comparison.

mod grid;
mod observables;
mod spectral;
mod state;
mod window;

pub use grid::Grid1D;
pub use observables::{compare, observables, ComparisonReport, ObservableReport};
pub use spectral::SpectralTransform;
pub use state::{
    edge_mass_fraction, fourier_transform, make_gaussian, Direction, Representation, WaveFunction,
    EDGE_MASS_LIMIT,
};
pub use window::PlateauWindow;
