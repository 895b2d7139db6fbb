//! The 33-ray Peres system: geometry, colourings, null family and co-events over colourings.

pub mod coevents;
pub mod colouring;
pub mod error;
pub mod rays;
pub mod search;
pub mod spin;
pub mod symmetry;

pub use coevents::{
    coevent_for_ray, covers_types, linear_pks_coevent, peres_colouring, peres_colouring_pair, ray_coverage, table71, Kind, LinearPks,
    PksCoEvent, RayCoverage, Table71Row,
};
pub use colouring::{check_consistent, pks_null_family, pks_sets_containing, Colour, NullSet, PeresColouring, SymbolicEvent};
pub use error::PksError;
pub use rays::{PeresSet, Ray, RayType, NAMED_BASES, RAY_COUNT, RAY_NAMES};
pub use search::{forcing_chain, prove_no_consistent_colouring, r_set, Constraints, ForcingChain, SearchReport, Solver};
pub use symmetry::{symmetry_group, PksSymmetry};
pub use spin::{projector_product, spin1_projectors, spin_matrices, verify_pks_nullity, NullityReport};
