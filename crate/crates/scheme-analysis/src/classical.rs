use coevent_engine::CoEvent;
use measure_core::{Event, Partition, SampleSpace};

use crate::error::AnalysisError;

/// Most blocks a partition may have before its subalgebra is too large to walk.
pub const BLOCK_CAP: usize = 20;

pub(crate) fn check_blocks(partition: &Partition) -> Result<(), AnalysisError> {
    if partition.len() > BLOCK_CAP {
        return Err(AnalysisError::SpaceTooLarge { size: partition.len(), cap: BLOCK_CAP });
    }
    Ok(())
}

/// φ on every union of blocks, indexed by block selector.
pub fn restricted_table(phi: &CoEvent, partition: &Partition) -> Vec<bool> {
    partition.subalgebra().into_iter().map(|a| phi.eval(a)).collect()
}

/// The restriction as a co-event on the coarse space whose histories are the blocks.
/// `None` when φ vanishes on the whole subalgebra.
pub fn restrict(phi: &CoEvent, partition: &Partition, coarse: &SampleSpace) -> Option<CoEvent> {
    CoEvent::from_truth_table(coarse, &restricted_table(phi, partition)).ok()
}

/// Whether φ is additive and multiplicative on the subalgebra generated by the partition.
pub fn is_classical_on(phi: &CoEvent, partition: &Partition) -> bool {
    let table = restricted_table(phi, partition);
    let size = table.len();
    if table[0] {
        return false;
    }
    for s in 0..size {
        for t in s..size {
            let (a, b) = (table[s], table[t]);
            if table[s ^ t] != (a ^ b) || table[s & t] != (a && b) {
                return false;
            }
        }
    }
    true
}

/// Classical on the two-block partition {A, Ω+A}. For A = ∅ or Ω the partition has one block.
pub fn is_homomorphic_on(phi: &CoEvent, space: &SampleSpace, a: Event) -> bool {
    let rest = space.full().minus(a);
    let blocks: Vec<Event> = [a, rest].into_iter().filter(|b| !b.is_empty()).collect();
    let partition = Partition::new(space, blocks).expect("an event and its complement partition the space");
    is_classical_on(phi, &partition)
}
