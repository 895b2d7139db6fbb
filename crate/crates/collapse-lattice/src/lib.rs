//! Null-lattice field model: unitary, collapse, coupled and environment
//! decoherence functionals over finite histories.

pub mod error;
pub mod functionals;
pub mod model;
pub mod verify;

pub use error::LatticeError;
pub use functionals::{
    collapse_decoherence, coupled_decoherence, environment_decoherence, unitary_decoherence, CoupledDecoherence,
    EnvironmentDecoherence,
};
pub use model::{gates, row_order, LatticeModel, LatticeSpec, Vertex};
pub use verify::{verify_lattice, LatticeReport};
