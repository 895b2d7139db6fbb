//! Decoherence functionals from Hilbert-space data, and the slit family.

pub mod error;
pub mod grouping;
pub mod slits;
pub mod spec;
pub mod structure;

pub use error::BridgeError;
pub use grouping::{best_rational, slit_grouping, GroupingReport};
pub use slits::{
    detector_theory, double_slit_spec, many_slit_exact, many_slit_spec, many_slit_theory, sixteen_slit_coefficients,
    triple_slit_spec, SlitCoefficients,
};
pub use spec::{build_decoherence, class_amplitude, parse_spec, HilbertSpec, Step, VectorAmplitude};
pub use structure::{solve_problem_structure, ProblemStructure};
