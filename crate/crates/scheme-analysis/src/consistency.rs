use coevent_engine::{run_scheme, CoEvent, Scheme};
use measure_core::{canonical_events, HistoriesTheory, Partition};
use serde::Serialize;

use crate::classical::{check_blocks, restrict};
use crate::error::AnalysisError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A coarse co-event affirms `event` but no fine co-event does.
    Unaffirmed { coarse: String, event: String },
    /// No fine co-event affirms everything this coarse co-event affirms.
    Uncovered { coarse: String },
    /// A fine co-event restricts to a map outside the coarse scheme.
    ForeignRestriction { fine: String, restriction: String },
    /// A coarse co-event is not the restriction of any fine one.
    MissingRestriction { coarse: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from(witness: Option<Witness>) -> Self {
        Self { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub partition: Vec<String>,
    pub scheme: String,
    pub coarse: Vec<String>,
    pub fine: Vec<String>,
    /// Restriction of each fine co-event to the subalgebra, `0` when it vanishes there.
    pub restricted: Vec<String>,
    pub weak: Verdict,
    pub strong: Verdict,
    pub total: Verdict,
}

impl ConsistencyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs the scheme on the coarse-grained and the fine theory and compares them on the subalgebra.
///
/// Fine co-events that vanish on the whole subalgebra are left out of the restricted scheme.
pub fn consistency_check(theory: &HistoriesTheory, partition: &Partition, scheme: &Scheme) -> Result<ConsistencyReport, AnalysisError> {
    check_blocks(partition)?;
    let coarse_theory = theory.coarse_grain(partition)?;
    let cspace = coarse_theory.space().clone();
    let coarse = run_scheme(&coarse_theory, scheme)?.coevents;
    let fine = run_scheme(theory, scheme)?.coevents;
    let restricted: Vec<Option<CoEvent>> = fine.iter().map(|f| restrict(f, partition, &cspace)).collect();
    let live: Vec<&CoEvent> = restricted.iter().flatten().collect();

    let mut weak = None;
    'weak: for phi in &coarse {
        for a in canonical_events(cspace.len()) {
            if phi.eval(a) && !live.iter().any(|r| r.eval(a)) {
                weak = Some(Witness::Unaffirmed { coarse: phi.describe(), event: cspace.describe(a) });
                break 'weak;
            }
        }
    }

    let strong = coarse
        .iter()
        .find(|phi| {
            !live.iter().any(|r| canonical_events(cspace.len()).all(|a| !phi.eval(a) || r.eval(a)))
        })
        .map(|phi| Witness::Uncovered { coarse: phi.describe() });

    let total = fine
        .iter()
        .zip(&restricted)
        .find_map(|(f, r)| match r {
            Some(r) if !coarse.contains(r) => Some(Witness::ForeignRestriction { fine: f.describe(), restriction: r.describe() }),
            _ => None,
        })
        .or_else(|| {
            coarse
                .iter()
                .find(|c| !live.contains(c))
                .map(|c| Witness::MissingRestriction { coarse: c.describe() })
        });

    Ok(ConsistencyReport {
        partition: partition.names().to_vec(),
        scheme: scheme.to_string(),
        coarse: coarse.iter().map(CoEvent::describe).collect(),
        fine: fine.iter().map(CoEvent::describe).collect(),
        restricted: restricted.iter().map(|r| r.as_ref().map_or_else(|| "0".to_string(), CoEvent::describe)).collect(),
        weak: Verdict::from(weak),
        strong: Verdict::from(strong),
        total: Verdict::from(total),
    })
}
