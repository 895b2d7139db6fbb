//! Co-events as Z₂ polynomials and the primitive-co-event schemes.

pub mod brute;
pub mod coevent;
pub mod error;
pub mod gf2;
pub mod nulls;
pub mod schemes;
pub mod witness;

pub use coevent::{zeta_mod2, CoEvent};
pub use error::EngineError;
pub use nulls::NullStructure;
pub use schemes::{
    classical_from, classical_scheme, has_unital_preclusive, linear_scheme, multiplicative_from, multiplicative_scheme,
    polynomial_scheme, preclusive_dimension, quadratic_scheme, run_scheme, Diagnostics, Scheme, SchemeResult,
};
pub use witness::quadratic_witness;

use measure_core::{Event, HistoriesTheory};

/// φ(A) for a co-event on the theory's space.
pub fn evaluate(phi: &CoEvent, a: Event) -> Result<bool, EngineError> {
    phi.evaluate(a)
}

pub fn is_preclusive(theory: &HistoriesTheory, phi: &CoEvent) -> Result<bool, EngineError> {
    phi.is_preclusive(theory)
}
