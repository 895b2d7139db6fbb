use std::fmt;

use measure_core::{canonical_events, Event, HistoriesTheory, SampleSpace};
use serde::Serialize;

use crate::coevent::CoEvent;
use crate::error::EngineError;
use crate::gf2::{AffineSystem, BitVec, Echelon};
use crate::nulls::NullStructure;

/// Largest kernel dimension walked exhaustively when listing minimal codewords.
pub const KERNEL_CAP: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Scheme {
    Classical,
    Linear { unital: bool },
    Polynomial { degree: usize, unital: bool },
    Multiplicative,
    Approximate { epsilon: String },
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Classical => write!(f, "classical"),
            Scheme::Linear { unital: false } => write!(f, "linear"),
            Scheme::Linear { unital: true } => write!(f, "linear-unital"),
            Scheme::Polynomial { degree: 2, unital } => write!(f, "quadratic{}", if *unital { "-unital" } else { "" }),
            Scheme::Polynomial { degree, unital } => write!(f, "poly:{degree}{}", if *unital { "-unital" } else { "" }),
            Scheme::Multiplicative => write!(f, "multiplicative"),
            Scheme::Approximate { epsilon } => write!(f, "approx:{epsilon}"),
        }
    }
}

impl Scheme {
    /// Accepts the names printed by `Display`, e.g. `linear-unital`, `poly:3`, `approx:1/100`.
    pub fn parse(text: &str) -> Result<Self, EngineError> {
        let t = text.trim();
        let (base, unital) = match t.strip_suffix("-unital") {
            Some(b) => (b, true),
            None => (t, false),
        };
        let bad = || EngineError::UnsupportedScheme(t.to_string());
        Ok(match base {
            "classical" if !unital => Scheme::Classical,
            "multiplicative" if !unital => Scheme::Multiplicative,
            "linear" => Scheme::Linear { unital },
            "quadratic" => Scheme::Polynomial { degree: 2, unital },
            _ => {
                if let Some(d) = base.strip_prefix("poly:") {
                    let degree: usize = d.parse().map_err(|_| bad())?;
                    if degree == 0 {
                        return Err(EngineError::BadDegree);
                    }
                    Scheme::Polynomial { degree, unital }
                } else if let Some(eps) = base.strip_prefix("approx:") {
                    if unital || eps.is_empty() {
                        return Err(bad());
                    }
                    Scheme::Approximate { epsilon: eps.to_string() }
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

/// Runs any exact scheme. The approximate scheme needs a threshold measure and lives elsewhere.
pub fn run_scheme(theory: &HistoriesTheory, scheme: &Scheme) -> Result<SchemeResult, EngineError> {
    match scheme {
        Scheme::Classical => classical_scheme(theory),
        Scheme::Linear { unital } => linear_scheme(theory, *unital),
        Scheme::Polynomial { degree, unital } => polynomial_scheme(theory, *degree, *unital),
        Scheme::Multiplicative => multiplicative_scheme(theory),
        Scheme::Approximate { .. } => Err(EngineError::UnsupportedScheme(scheme.to_string())),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub null_sets: usize,
    /// Candidates examined before the final domination filter.
    pub candidates: usize,
    pub unital: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchemeResult {
    pub scheme: Scheme,
    pub coevents: Vec<CoEvent>,
    pub diagnostics: Diagnostics,
}

impl SchemeResult {
    fn new(scheme: Scheme, mut coevents: Vec<CoEvent>, null_sets: usize, candidates: usize) -> Self {
        coevents.sort();
        coevents.dedup();
        let unital = coevents.iter().filter(|c| c.is_unital()).count();
        Self { scheme, coevents, diagnostics: Diagnostics { null_sets, candidates, unital } }
    }

    pub fn contains(&self, phi: &CoEvent) -> bool {
        self.coevents.contains(phi)
    }

    pub fn len(&self) -> usize {
        self.coevents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coevents.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.coevents.iter().map(|c| c.to_string()).collect()
    }
}

fn guard(theory: &HistoriesTheory, cap: usize, what: &'static str) -> Result<(), EngineError> {
    if theory.len() > cap {
        Err(EngineError::too_large(what, theory.len(), cap))
    } else {
        Ok(())
    }
}

/// γ* for every history lying in no null event.
pub fn classical_scheme(theory: &HistoriesTheory) -> Result<SchemeResult, EngineError> {
    guard(theory, theory.caps().enumeration, "sample space")?;
    let ns = NullStructure::of(theory)?;
    Ok(classical_from(&ns))
}

pub fn classical_from(ns: &NullStructure) -> SchemeResult {
    let space = ns.space();
    let co = (0..space.len())
        .filter(|&g| !ns.is_negligible(Event::singleton(g)))
        .map(|g| CoEvent::classical(space, g))
        .collect();
    SchemeResult::new(Scheme::Classical, co, ns.nulls().len(), space.len())
}

/// Duals of minimal non-negligible events.
pub fn multiplicative_scheme(theory: &HistoriesTheory) -> Result<SchemeResult, EngineError> {
    guard(theory, theory.caps().enumeration, "sample space")?;
    let ns = NullStructure::of(theory)?;
    Ok(multiplicative_from(&ns, Scheme::Multiplicative))
}

pub fn multiplicative_from(ns: &NullStructure, tag: Scheme) -> SchemeResult {
    let space = ns.space();
    let mut co = Vec::new();
    for a in canonical_events(space.len()).skip(1) {
        if ns.is_negligible(a) {
            continue;
        }
        if a.iter().all(|x| ns.is_negligible(a.minus(Event::singleton(x)))) {
            co.push(CoEvent::dual_of(space, a).expect("non-empty"));
        }
    }
    SchemeResult::new(tag, co, ns.nulls().len(), 1 << space.len())
}

/// Primitive preclusive linear co-events: duals minimal among non-zero even-meeting sets.
pub fn linear_scheme(theory: &HistoriesTheory, require_unital: bool) -> Result<SchemeResult, EngineError> {
    guard(theory, theory.caps().enumeration, "sample space")?;
    let ns = NullStructure::of(theory)?;
    let search = PolySearch::new(&ns, 1);
    let (co, examined) = search.additive_primitives(1)?;
    let co = co.into_iter().filter(|c| !require_unital || c.is_unital()).collect();
    Ok(SchemeResult::new(Scheme::Linear { unital: require_unital }, co, ns.nulls().len(), examined))
}

pub fn quadratic_scheme(theory: &HistoriesTheory, require_unital: bool) -> Result<SchemeResult, EngineError> {
    polynomial_scheme(theory, 2, require_unital)
}

/// Degree-n scheme: lower-degree primitives plus degree-n co-events that are
/// minimal by monomial inclusion and not covered by a lower-degree preclusive
/// co-event on every event where they are true.
pub fn polynomial_scheme(theory: &HistoriesTheory, degree: usize, require_unital: bool) -> Result<SchemeResult, EngineError> {
    if degree == 0 {
        return Err(EngineError::BadDegree);
    }
    let caps = theory.caps();
    let cap = match degree {
        1 => caps.enumeration,
        2 => caps.quadratic,
        _ => caps.polynomial,
    };
    guard(theory, cap, if degree == 2 { "quadratic search space" } else { "polynomial search space" })?;
    let ns = NullStructure::of(theory)?;
    let mut all = Vec::new();
    let mut examined = 0;
    for d in 1..=degree {
        let search = PolySearch::new(&ns, d);
        let (cands, count) = search.additive_primitives(d)?;
        examined += count;
        if d == 1 {
            all.extend(cands);
            continue;
        }
        let lower = PolySearch::new(&ns, d - 1);
        let base = lower.preclusive_system();
        for phi in cands {
            if !lower.covers(&base, &phi) {
                all.push(phi);
            }
        }
    }
    let co = all.into_iter().filter(|c| !require_unital || c.is_unital()).collect();
    let tag = if degree == 1 { Scheme::Linear { unital: require_unital } } else { Scheme::Polynomial { degree, unital: require_unital } };
    Ok(SchemeResult::new(tag, co, ns.nulls().len(), examined))
}

/// Whether some preclusive co-event of degree at most `degree` takes Ω to 1.
pub fn has_unital_preclusive(theory: &HistoriesTheory, degree: usize) -> Result<bool, EngineError> {
    let ns = NullStructure::of(theory)?;
    let search = PolySearch::new(&ns, degree);
    let mut sys = search.preclusive_system();
    sys.add(&search.row(theory.full()), true);
    Ok(sys.is_consistent())
}

/// Dimension of the GF(2) space of preclusive polynomials of degree at most `degree` (zero map included).
pub fn preclusive_dimension(theory: &HistoriesTheory, degree: usize) -> Result<usize, EngineError> {
    let ns = NullStructure::of(theory)?;
    let search = PolySearch::new(&ns, degree);
    let mut e = Echelon::new(search.monos.len());
    for z in ns.nulls() {
        e.insert(search.row(*z));
    }
    Ok(search.monos.len() - e.rank())
}

/// Monomials of degree at most d over a small space, with preclusion constraints.
pub(crate) struct PolySearch<'a> {
    ns: &'a NullStructure,
    monos: Vec<Event>,
}

impl<'a> PolySearch<'a> {
    pub(crate) fn new(ns: &'a NullStructure, degree: usize) -> Self {
        let n = ns.space().len();
        let monos: Vec<Event> = canonical_events(n).skip(1).take_while(|m| m.len() <= degree).collect();
        Self { ns, monos }
    }

    fn space(&self) -> &SampleSpace {
        self.ns.space()
    }

    /// Indicator of the monomials contained in `a`, so that row · n = φ(A).
    pub(crate) fn row(&self, a: Event) -> BitVec {
        let mut v = BitVec::zeros(self.monos.len());
        for (i, m) in self.monos.iter().enumerate() {
            if m.is_subset(a) {
                v.flip(i);
            }
        }
        v
    }

    pub(crate) fn preclusive_system(&self) -> AffineSystem {
        let mut sys = AffineSystem::new(self.monos.len());
        for z in self.ns.nulls() {
            sys.add(&self.row(*z), false);
        }
        sys
    }

    /// Whether a preclusive co-event in this degree range is true wherever `phi` is.
    fn covers(&self, base: &AffineSystem, phi: &CoEvent) -> bool {
        let mut sys = base.clone();
        let table = phi.truth_table();
        for (mask, &v) in table.iter().enumerate() {
            if v {
                sys.add(&self.row(Event(mask as u64)), true);
                if !sys.is_consistent() {
                    return false;
                }
            }
        }
        sys.is_consistent()
    }

    /// Preclusive co-events whose monomial set contains no smaller preclusive
    /// monomial set, restricted to those of degree exactly `d`.
    fn additive_primitives(&self, d: usize) -> Result<(Vec<CoEvent>, usize), EngineError> {
        let space = self.space();
        let mut out = Vec::new();
        // A non-negligible monomial meets no constraint, so alone it is minimal.
        for m in &self.monos {
            if m.len() == d && !self.ns.is_negligible(*m) {
                out.push(CoEvent::new(space, [*m]).expect("non-empty"));
            }
        }
        let neg: Vec<Event> = self.monos.iter().copied().filter(|m| self.ns.is_negligible(*m)).collect();
        if neg.is_empty() {
            let count = out.len();
            return Ok((out, count));
        }
        let mut e = Echelon::new(neg.len());
        for z in self.ns.nulls() {
            let row = BitVec::from_indices(neg.len(), neg.iter().enumerate().filter(|(_, m)| m.is_subset(*z)).map(|(i, _)| i));
            e.insert(row);
        }
        let kernel = e.kernel();
        if kernel.len() > KERNEL_CAP {
            return Err(EngineError::too_large("preclusive kernel dimension", kernel.len(), KERNEL_CAP));
        }
        let top: BitVec = BitVec::from_indices(neg.len(), neg.iter().enumerate().filter(|(_, m)| m.len() == d).map(|(i, _)| i));
        let mut w = BitVec::zeros(neg.len());
        let k = kernel.len();
        let mut examined = out.len();
        for step in 1u64..(1u64 << k) {
            let flip = step.trailing_zeros() as usize;
            w.xor_assign(&kernel[flip].1);
            examined += 1;
            if !w.intersects(&top) {
                continue;
            }
            if is_minimal(&kernel, &w) {
                out.push(CoEvent::new(space, w.ones().map(|i| neg[i])).expect("non-zero codeword"));
            }
        }
        out.retain(|c| c.degree() == d);
        Ok((out, examined))
    }
}

/// A codeword is minimal iff the codewords supported inside it form a line.
fn is_minimal(kernel: &[(usize, BitVec)], w: &BitVec) -> bool {
    let inside: Vec<&BitVec> = kernel.iter().filter(|(f, _)| w.get(*f)).map(|(_, k)| k).collect();
    let mut e = Echelon::new(w.len());
    for k in &inside {
        e.insert(k.and_not(w));
    }
    inside.len() - e.rank() == 1
}
