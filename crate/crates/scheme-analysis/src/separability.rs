use coevent_engine::{multiplicative_scheme, CoEvent};
use measure_core::{canonical_events, Event, HistoriesTheory, Partition};

use crate::classical::{check_blocks, restrict};
use crate::error::AnalysisError;

/// Every event B, in canonical order, on which the separability biconditional fails.
///
/// Strong form: B is null iff every B ∩ Aᵢ is null. Plain form: B lies inside a null set
/// iff every B ∩ Aᵢ lies inside a null subset of Aᵢ.
pub fn separability_violations(theory: &HistoriesTheory, partition: &Partition, strong: bool) -> Result<Vec<Event>, AnalysisError> {
    theory.require_enumerable(theory.caps().enumeration)?;
    let null = theory.null_flags()?;
    let n = theory.len();
    let blocks = partition.blocks();
    let downward = |mut t: Vec<bool>| {
        for bit in 0..n {
            let m = 1usize << bit;
            for s in 0..t.len() {
                if s & m != 0 && t[s] {
                    t[s ^ m] = true;
                }
            }
        }
        t
    };
    let (lhs, inside) = if strong {
        (null.clone(), null)
    } else {
        // inside[S]: S lies in a null set contained in a single block.
        let single: Vec<bool> = (0..null.len())
            .map(|s| null[s] && blocks.iter().any(|b| Event(s as u64).is_subset(*b)))
            .collect();
        (downward(null), downward(single))
    };
    let blockwise = |b: Event| blocks.iter().all(|a| inside[(b * *a).bits() as usize]);
    Ok(canonical_events(n).filter(|&b| lhs[b.bits() as usize] != blockwise(b)).collect())
}

/// Smallest violating event, if any.
pub fn separability_witness(theory: &HistoriesTheory, partition: &Partition, strong: bool) -> Result<Option<Event>, AnalysisError> {
    Ok(separability_violations(theory, partition, strong)?.into_iter().next())
}

pub fn preclusive_separability(theory: &HistoriesTheory, partition: &Partition, strong: bool) -> Result<bool, AnalysisError> {
    Ok(separability_witness(theory, partition, strong)?.is_none())
}

/// D(γ, γ') vanishes for every pair of histories in different blocks.
pub fn is_superdecoherent(theory: &HistoriesTheory, partition: &Partition) -> bool {
    let owner: Vec<usize> = (0..theory.len())
        .map(|h| partition.blocks().iter().position(|b| b.contains(h)).expect("partition covers the space"))
        .collect();
    let d = theory.functional();
    (0..theory.len()).all(|i| {
        (0..theory.len())
            .filter(|&j| owner[i] != owner[j])
            .all(|j| d.pair(Event::singleton(i), Event::singleton(j)).is_zero_within(theory.tolerance()))
    })
}

/// Checks the multiplicative scheme on a preclusively separable partition of a strongly positive theory:
/// each member of ℳ is supported in one block, every non-null block carries one, and the restrictions
/// are exactly the coarse co-events {Aᵢ* : μ(Aᵢ) ≠ 0}.
pub fn verify_total_consistency_theorem(theory: &HistoriesTheory, partition: &Partition) -> Result<bool, AnalysisError> {
    check_blocks(partition)?;
    if !theory.is_strongly_positive() {
        return Err(AnalysisError::PreconditionFailed("theory is not strongly positive".into()));
    }
    if let Some(b) = separability_witness(theory, partition, false)? {
        return Err(AnalysisError::PreconditionFailed(format!(
            "partition is not preclusively separable, witness {}",
            theory.space().describe(b)
        )));
    }
    let m = multiplicative_scheme(theory)?.coevents;
    let duals: Vec<Event> = m.iter().map(|c| c.multiplicative_dual().expect("multiplicative members have a dual")).collect();
    let blocks = partition.blocks();

    let supported = duals.iter().all(|d| blocks.iter().any(|a| d.is_subset(*a)));
    let hit = blocks.iter().all(|a| theory.is_null(*a) || duals.iter().any(|d| d.is_subset(*a)));

    let coarse = theory.coarse_grain(partition)?;
    let cspace = coarse.space().clone();
    let expected: Vec<CoEvent> = (0..blocks.len())
        .filter(|&i| !theory.is_null(blocks[i]))
        .map(|i| CoEvent::classical(&cspace, i))
        .collect();
    let mut restricted: Vec<CoEvent> = m.iter().filter_map(|c| restrict(c, partition, &cspace)).collect();
    restricted.sort();
    restricted.dedup();
    let coarse_m = multiplicative_scheme(&coarse)?.coevents;
    Ok(supported && hit && restricted == expected && coarse_m == expected)
}
