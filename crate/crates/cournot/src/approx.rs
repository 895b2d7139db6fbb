use std::cmp::Ordering;

use coevent_engine::{multiplicative_from, CoEvent, NullStructure, Scheme, SchemeResult};
use measure_core::{canonical_events, HistoriesTheory};
use num_rational::BigRational;

use crate::error::CournotError;

fn guard(theory: &HistoriesTheory) -> Result<(), CournotError> {
    let cap = theory.caps().enumeration;
    if theory.len() > cap {
        Err(CournotError::TooLarge { what: "sample space", size: theory.len(), cap })
    } else {
        Ok(())
    }
}

/// Events with μ(A) < ε treated as null.
pub fn approximate_nulls(theory: &HistoriesTheory, epsilon: &BigRational) -> Result<NullStructure, CournotError> {
    guard(theory)?;
    let n = theory.len();
    let mut flags = vec![false; 1 << n];
    for a in canonical_events(n) {
        flags[a.bits() as usize] = theory.measure(a)?.cmp_rational(epsilon) == Ordering::Less;
    }
    Ok(NullStructure::from_flags(theory.space(), flags))
}

/// The multiplicative scheme with preclusion replaced by approximate preclusion at ε.
pub fn approx_scheme(theory: &HistoriesTheory, epsilon: &BigRational) -> Result<SchemeResult, CournotError> {
    let ns = approximate_nulls(theory, epsilon)?;
    Ok(multiplicative_from(&ns, Scheme::Approximate { epsilon: epsilon.to_string() }))
}

/// A co-event that vanishes on every event of measure below ε.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproximateCoEvent {
    pub coevent: CoEvent,
    pub epsilon: BigRational,
}

impl ApproximateCoEvent {
    pub fn new(theory: &HistoriesTheory, coevent: CoEvent, epsilon: BigRational) -> Result<Self, CournotError> {
        if coevent.space() != theory.space() {
            return Err(coevent_engine::EngineError::SpaceMismatch.into());
        }
        let ns = approximate_nulls(theory, &epsilon)?;
        if ns.nulls().iter().any(|&a| coevent.eval(a)) {
            return Err(CournotError::NotApproximatelyPreclusive(epsilon.to_string()));
        }
        Ok(Self { coevent, epsilon })
    }
}
