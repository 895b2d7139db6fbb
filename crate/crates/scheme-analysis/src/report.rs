use std::fmt;

use coevent_engine::CoEvent;
use measure_core::{canonical_events, Event, HistoriesTheory, Partition};
use serde::Serialize;

use crate::classical::{check_blocks, restricted_table};
use crate::error::AnalysisError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruthRow {
    /// Blocks making up the event, e.g. `{A,C}`.
    pub event: String,
    pub value: bool,
    /// φ on the complementary union of blocks.
    pub complement: bool,
    /// Set when φ denies both the event and its complement.
    pub neither: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub coevent: String,
    pub partition: Vec<String>,
    pub rows: Vec<TruthRow>,
}

impl TruthTable {
    pub fn value(&self, event: &str) -> Option<bool> {
        self.rows.iter().find(|r| r.event == event).map(|r| r.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("truth tables serialize")
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().map(|r| r.event.chars().count()).max().unwrap_or(0).max(5);
        writeln!(f, "co-event {}", self.coevent)?;
        writeln!(f, "{:<width$}  answer", "event")?;
        for r in &self.rows {
            let mark = if r.neither { "  (neither)" } else { "" };
            writeln!(f, "{:<width$}  {}{}", r.event, if r.value { "yes" } else { "no" }, mark)?;
        }
        Ok(())
    }
}

/// φ on every union of blocks, in canonical order with ∅ first.
pub fn anhomomorphism_report(theory: &HistoriesTheory, phi: &CoEvent, partition: &Partition) -> Result<TruthTable, AnalysisError> {
    if phi.space() != theory.space() {
        return Err(coevent_engine::EngineError::SpaceMismatch.into());
    }
    check_blocks(partition)?;
    let table = restricted_table(phi, partition);
    let k = partition.len();
    let all = Event::full(k).bits() as usize;
    let rows = canonical_events(k)
        .map(|sel| {
            let s = sel.bits() as usize;
            let names: Vec<&str> = sel.iter().map(|i| partition.names()[i].as_str()).collect();
            let (value, complement) = (table[s], table[all ^ s]);
            TruthRow { event: format!("{{{}}}", names.join(",")), value, complement, neither: !value && !complement }
        })
        .collect();
    Ok(TruthTable { coevent: phi.describe(), partition: partition.names().to_vec(), rows })
}
