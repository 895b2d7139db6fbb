//! Classicality of co-events on partitions, consistency under coarse graining and preclusive separability.

pub mod classical;
pub mod consistency;
pub mod error;
pub mod report;
pub mod separability;

pub use classical::{is_classical_on, is_homomorphic_on, restrict, restricted_table, BLOCK_CAP};
pub use consistency::{consistency_check, ConsistencyReport, Verdict, Witness};
pub use error::AnalysisError;
pub use report::{anhomomorphism_report, TruthRow, TruthTable};
pub use separability::{is_superdecoherent, preclusive_separability, separability_violations, separability_witness, verify_total_consistency_theorem};
