use measure_core::{Event, HistoriesTheory, SampleSpace};

use crate::error::EngineError;

/// Null and negligible flags for every event of a small space.
#[derive(Clone, Debug)]
pub struct NullStructure {
    space: SampleSpace,
    null: Vec<bool>,
    negligible: Vec<bool>,
    nulls: Vec<Event>,
}

impl NullStructure {
    pub fn of(theory: &HistoriesTheory) -> Result<Self, EngineError> {
        let flags = theory.null_flags()?;
        Ok(Self::from_flags(theory.space(), flags))
    }

    /// Builds from an arbitrary "treated as null" predicate, indexed by mask.
    pub fn from_flags(space: &SampleSpace, mut null: Vec<bool>) -> Self {
        let n = space.len();
        assert_eq!(null.len(), 1 << n);
        null[0] = true;
        let mut negligible = null.clone();
        // Downward closure: A is negligible if some one-larger superset is.
        for mask in (0..1usize << n).rev() {
            if negligible[mask] {
                continue;
            }
            let mut rest = !mask & ((1 << n) - 1);
            while rest != 0 {
                let b = rest & rest.wrapping_neg();
                if negligible[mask | b] && (mask | b) != mask {
                    negligible[mask] = true;
                    break;
                }
                rest &= rest - 1;
            }
        }
        let mut nulls: Vec<Event> = (1..1u64 << n).filter(|&m| null[m as usize]).map(Event).collect();
        nulls.sort();
        Self { space: space.clone(), null, negligible, nulls }
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    /// Non-empty null events in canonical order.
    pub fn nulls(&self) -> &[Event] {
        &self.nulls
    }

    pub fn is_null(&self, a: Event) -> bool {
        self.null[a.bits() as usize]
    }

    /// Contained in some null event. The empty event always counts.
    pub fn is_negligible(&self, a: Event) -> bool {
        self.negligible[a.bits() as usize]
    }
}
