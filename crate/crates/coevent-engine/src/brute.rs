//! Exhaustive reference implementation over all Z₂ maps on tiny spaces.
//!
//! Maps are truth tables packed into a u64 (bit A is the value on event A),
//! filtered by the scheme rule written as an identity on disjoint events,
//! then by preclusion and the domination conditions in their event form.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use measure_core::{Event, HistoriesTheory};

use crate::coevent::CoEvent;
use crate::error::EngineError;

pub const MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Order-n sum rule on disjoint events; order 1 is additivity.
    Order(usize),
    Multiplicative,
    /// Unital ring homomorphisms.
    Classical,
}

fn bit(t: u64, a: usize) -> bool {
    t >> a & 1 == 1
}

/// Parity masks K such that the rule reads popcount(t & K) even for each K.
fn order_constraints(n: usize, d: usize) -> Vec<u64> {
    let bins = d + 2;
    let tuples = bins.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..tuples {
        let mut parts = vec![0usize; d + 1];
        let mut c = code;
        for h in 0..n {
            let b = c % bins;
            c /= bins;
            if b > 0 {
                parts[b - 1] |= 1 << h;
            }
        }
        let full = parts.iter().fold(0, |a, p| a | p);
        let mut k = 1u64 << full;
        for sel in 1usize..(1 << (d + 1)) - 1 {
            let u = (0..=d).filter(|i| sel >> i & 1 == 1).fold(0, |a, i| a | parts[i]);
            k ^= 1 << u;
        }
        if k != 0 {
            out.push(k);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn satisfies(n: usize, rule: Rule, t: u64, order: &[u64]) -> bool {
    let events = 1usize << n;
    match rule {
        Rule::Order(_) => order.iter().all(|k| (t & k).count_ones() % 2 == 0),
        Rule::Multiplicative => (0..events).all(|a| (0..events).all(|b| bit(t, a & b) == (bit(t, a) && bit(t, b)))),
        Rule::Classical => {
            bit(t, events - 1)
                && satisfies(n, Rule::Multiplicative, t, order)
                && (0..events).all(|a| (0..events).all(|b| bit(t, a ^ b) == (bit(t, a) ^ bit(t, b))))
        }
    }
}

/// All non-zero maps with φ(∅)=0 obeying `rule` on an n-history space (cached).
pub fn rule_maps(n: usize, rule: Rule) -> Vec<u64> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Rule), Vec<u64>>>> = OnceLock::new();
    assert!(n <= MAX_N, "brute force is limited to {MAX_N} histories");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(n, rule)) {
        return v.clone();
    }
    let order = match rule {
        Rule::Order(d) => order_constraints(n, d),
        _ => Vec::new(),
    };
    let events = 1usize << n;
    let maps: Vec<u64> = (1u64..1 << events)
        .filter(|t| t & 1 == 0)
        .filter(|&t| satisfies(n, rule, t, &order))
        .collect();
    cache.lock().unwrap().insert((n, rule), maps.clone());
    maps
}

fn preclusive(theory: &HistoriesTheory, t: u64) -> bool {
    (1..1u64 << theory.len()).all(|z| !(bit(t, z as usize) && theory.is_null(Event(z))))
}

fn to_coevents(theory: &HistoriesTheory, maps: &[u64]) -> Vec<CoEvent> {
    let events = 1usize << theory.len();
    let mut out: Vec<CoEvent> = maps
        .iter()
        .map(|&t| {
            let table: Vec<bool> = (0..events).map(|a| bit(t, a)).collect();
            CoEvent::from_truth_table(theory.space(), &table).expect("non-zero map")
        })
        .collect();
    out.sort();
    out
}

fn check(theory: &HistoriesTheory) -> Result<(), EngineError> {
    if theory.len() > MAX_N {
        Err(EngineError::too_large("brute-force space", theory.len(), MAX_N))
    } else {
        Ok(())
    }
}

fn unital(theory: &HistoriesTheory, t: u64) -> bool {
    bit(t, (1 << theory.len()) - 1)
}

pub fn classical(theory: &HistoriesTheory) -> Result<Vec<CoEvent>, EngineError> {
    check(theory)?;
    let maps: Vec<u64> = rule_maps(theory.len(), Rule::Classical).into_iter().filter(|&t| preclusive(theory, t)).collect();
    Ok(to_coevents(theory, &maps))
}

pub fn multiplicative(theory: &HistoriesTheory) -> Result<Vec<CoEvent>, EngineError> {
    check(theory)?;
    let pre: Vec<u64> = rule_maps(theory.len(), Rule::Multiplicative).into_iter().filter(|&t| preclusive(theory, t)).collect();
    // ψ dominates φ when ψ is true wherever φ is, and somewhere else too.
    let prim: Vec<u64> = pre.iter().copied().filter(|&p| !pre.iter().any(|&q| q != p && p & !q == 0)).collect();
    Ok(to_coevents(theory, &prim))
}

/// S_m(γ_1..γ_m): sum of φ over the non-empty subsets of {γ_1..γ_m}, for every set of size at most d.
fn s_values(n: usize, d: usize, t: u64) -> u64 {
    let mut out = 0u64;
    for s in 1usize..1 << n {
        if s.count_ones() as usize > d {
            continue;
        }
        let mut acc = false;
        let mut sub = s;
        loop {
            if sub != 0 {
                acc ^= bit(t, sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & s;
        }
        if acc {
            out |= 1 << s;
        }
    }
    out
}

pub fn linear(theory: &HistoriesTheory, require_unital: bool) -> Result<Vec<CoEvent>, EngineError> {
    polynomial(theory, 1, require_unital)
}

/// Degree-d scheme from the event-form conditions.
///
/// A degree-d map is dominated by another preclusive map ψ of degree at most
/// d if every S-value of ψ that is 1 is also 1 for φ, or by a preclusive ψ of
/// lower degree that is true wherever φ is true.
pub fn polynomial(theory: &HistoriesTheory, d: usize, require_unital: bool) -> Result<Vec<CoEvent>, EngineError> {
    check(theory)?;
    let n = theory.len();
    let keep = |t: &u64| preclusive(theory, *t) && (!require_unital || unital(theory, *t));
    let mut prims: Vec<u64> = Vec::new();
    let mut lower: Vec<u64> = Vec::new();
    for level in 1..=d {
        let pool: Vec<u64> = rule_maps(n, Rule::Order(level)).into_iter().filter(keep).collect();
        let svals: HashMap<u64, u64> = pool.iter().map(|&t| (t, s_values(n, level, t))).collect();
        for &phi in &pool {
            if lower.contains(&phi) {
                continue;
            }
            let sp = svals[&phi];
            let additive = pool.iter().any(|&psi| psi != phi && svals[&psi] & !sp == 0);
            let product = lower.iter().any(|&psi| phi & !psi == 0);
            if !additive && !product {
                prims.push(phi);
            }
        }
        lower = pool;
    }
    Ok(to_coevents(theory, &prims))
}
