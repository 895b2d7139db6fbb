//! Finite sample spaces, decoherence functionals and quantum measures.

pub mod caps;
pub mod error;
pub mod event;
pub mod io;
pub mod registry;
pub mod scalar;
pub mod theory;

pub use caps::Caps;
pub use error::MeasureError;
pub use event::{canonical_events, Event, Partition, SampleSpace};
pub use scalar::{int, parse_rational, ratio, Real};
pub use theory::{ComplexValue, DecoherenceFunctional, Entries, ExactComplex, HistoriesTheory};
