use std::collections::BTreeSet;
use std::fmt;

use measure_core::{Event, HistoriesTheory, SampleSpace};

use crate::error::EngineError;

/// A Z₂-valued map on events, stored as its polynomial in the classical co-events.
///
/// Each monomial S stands for the product of γ* over γ ∈ S, so the co-event
/// takes A to the parity of the number of monomials contained in A.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoEvent {
    space: SampleSpace,
    monomials: BTreeSet<Event>,
}

impl PartialOrd for CoEvent {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CoEvent {
    /// Degree, then monomial count, then the monomial lists lexicographically.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.monomials.len())
            .cmp(&(other.degree(), other.monomials.len()))
            .then_with(|| self.monomials.iter().cmp(other.monomials.iter()))
    }
}

impl CoEvent {
    pub fn new(space: &SampleSpace, monomials: impl IntoIterator<Item = Event>) -> Result<Self, EngineError> {
        let mut set = BTreeSet::new();
        for m in monomials {
            if m.is_empty() {
                return Err(EngineError::Parse("empty monomial".into()));
            }
            if !m.is_subset(space.full()) {
                return Err(EngineError::SpaceMismatch);
            }
            // Repeated monomials cancel mod 2.
            if !set.remove(&m) {
                set.insert(m);
            }
        }
        if set.is_empty() {
            return Err(EngineError::ZeroMap);
        }
        Ok(Self { space: space.clone(), monomials: set })
    }

    /// The multiplicative dual A*, true exactly on supersets of A.
    pub fn dual_of(space: &SampleSpace, a: Event) -> Result<Self, EngineError> {
        Self::new(space, [a])
    }

    /// The classical co-event γ*.
    pub fn classical(space: &SampleSpace, gamma: usize) -> Self {
        Self::new(space, [Event::singleton(gamma)]).expect("history inside space")
    }

    /// Linear co-event with dual `s`: A maps to |A ∩ s| mod 2.
    pub fn linear(space: &SampleSpace, s: Event) -> Result<Self, EngineError> {
        Self::new(space, s.iter().map(Event::singleton))
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn monomials(&self) -> impl Iterator<Item = Event> + '_ {
        self.monomials.iter().copied()
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn has_monomial(&self, m: Event) -> bool {
        self.monomials.contains(&m)
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Dual event if every monomial has degree one.
    pub fn linear_dual(&self) -> Option<Event> {
        if self.degree() == 1 {
            Some(self.monomials.iter().fold(Event::EMPTY, |acc, m| acc | *m))
        } else {
            None
        }
    }

    /// The single monomial of a multiplicative co-event.
    pub fn multiplicative_dual(&self) -> Option<Event> {
        if self.monomials.len() == 1 {
            self.monomials.iter().next().copied()
        } else {
            None
        }
    }

    pub fn eval(&self, a: Event) -> bool {
        self.monomials.iter().filter(|m| m.is_subset(a)).count() % 2 == 1
    }

    pub fn evaluate(&self, a: Event) -> Result<bool, EngineError> {
        if !a.is_subset(self.space.full()) {
            return Err(EngineError::SpaceMismatch);
        }
        Ok(self.eval(a))
    }

    pub fn is_unital(&self) -> bool {
        self.monomials.len() % 2 == 1
    }

    /// Values on every event, indexed by mask.
    pub fn truth_table(&self) -> Vec<bool> {
        let n = self.space.len();
        let mut t = vec![false; 1 << n];
        for m in &self.monomials {
            t[m.bits() as usize] = true;
        }
        zeta_mod2(&mut t, n);
        t
    }

    /// Rebuilds the polynomial from a truth table (which must vanish on ∅).
    pub fn from_truth_table(space: &SampleSpace, table: &[bool]) -> Result<Self, EngineError> {
        let n = space.len();
        if table.len() != 1 << n || table[0] {
            return Err(EngineError::Parse("truth table must cover 2^n events and vanish on the empty event".into()));
        }
        let mut t = table.to_vec();
        zeta_mod2(&mut t, n);
        Self::new(space, (1..t.len()).filter(|&m| t[m]).map(|m| Event(m as u64)))
    }

    pub fn sum(&self, other: &CoEvent) -> Result<CoEvent, EngineError> {
        self.same_space(other)?;
        Self::new(&self.space, self.monomials.iter().chain(&other.monomials).copied())
    }

    /// Pointwise product; monomials multiply by union since γ*γ* = γ*.
    pub fn product(&self, other: &CoEvent) -> Result<CoEvent, EngineError> {
        self.same_space(other)?;
        let prods = self.monomials.iter().flat_map(|a| other.monomials.iter().map(move |b| *a | *b));
        Self::new(&self.space, prods)
    }

    fn same_space(&self, other: &CoEvent) -> Result<(), EngineError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(EngineError::SpaceMismatch)
        }
    }

    /// Zero on every null event of the theory.
    pub fn is_preclusive(&self, theory: &HistoriesTheory) -> Result<bool, EngineError> {
        if theory.space() != &self.space {
            return Err(EngineError::SpaceMismatch);
        }
        Ok(theory.enumerate_null_sets()?.into_iter().all(|z| !self.eval(z)))
    }

    /// Whether the polynomial has degree at most `n`, i.e. obeys the order-n sum rule.
    pub fn obeys_order(&self, n: usize) -> bool {
        self.degree() <= n
    }

    /// Image under a relabelling of histories.
    pub fn map_histories(&self, space: &SampleSpace, f: impl Fn(usize) -> usize) -> Result<CoEvent, EngineError> {
        Self::new(space, self.monomials.iter().map(|m| Event(m.iter().fold(0, |acc, i| acc | 1 << f(i)))))
    }

    /// Text form such as `AD*.CD* + BD*`.
    pub fn parse(space: &SampleSpace, text: &str) -> Result<Self, EngineError> {
        let mut monos = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(EngineError::Parse(text.to_string()));
            }
            let mut m = Event::EMPTY;
            for factor in term.split('.') {
                let label = factor.trim().strip_suffix('*').ok_or_else(|| EngineError::Parse(text.to_string()))?;
                let i = space.index_of(label.trim()).ok_or_else(|| EngineError::Parse(format!("unknown history {label:?}")))?;
                m = m | Event::singleton(i);
            }
            monos.push(m);
        }
        Self::new(space, monos)
    }

    /// Linear co-events as `{a,b}⊕`, others in polynomial form.
    pub fn describe(&self) -> String {
        match self.linear_dual() {
            Some(d) if self.monomials.len() > 1 => format!("{}⊕", self.space.describe(d)),
            _ => self.to_string(),
        }
    }
}

impl fmt::Display for CoEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|m| m.iter().map(|i| format!("{}*", self.space.label(i))).collect::<Vec<_>>().join("."))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// In-place subset-sum transform mod 2; it is its own inverse.
pub fn zeta_mod2(t: &mut [bool], n: usize) {
    for bit in 0..n {
        let b = 1usize << bit;
        for s in 0..t.len() {
            if s & b != 0 {
                t[s] ^= t[s ^ b];
            }
        }
    }
}
