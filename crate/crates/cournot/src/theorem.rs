use coevent_engine::CoEvent;
use measure_core::{canonical_events, Event, HistoriesTheory};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::CournotError;

fn disjoint(a: Event, b: Event, c: Event) -> Result<(), CournotError> {
    if a.is_disjoint(b) && b.is_disjoint(c) && a.is_disjoint(c) {
        Ok(())
    } else {
        Err(CournotError::NotDisjoint)
    }
}

fn v(phi: &CoEvent, a: Event) -> i64 {
    phi.eval(a) as i64
}

/// φ̃(A⊔B⊔C) − φ̃(A⊔B) − φ̃(B⊔C) − φ̃(C⊔A) + φ̃(A) + φ̃(B) + φ̃(C), computed in the integers.
pub fn r_functional(phi: &CoEvent, a: Event, b: Event, c: Event) -> Result<i64, CournotError> {
    disjoint(a, b, c)?;
    Ok(v(phi, a | b | c) - v(phi, a | b) - v(phi, b | c) - v(phi, c | a) + v(phi, a) + v(phi, b) + v(phi, c))
}

/// The same seven values summed in Z₂.
pub fn q_functional(phi: &CoEvent, a: Event, b: Event, c: Event) -> Result<bool, CournotError> {
    disjoint(a, b, c)?;
    let terms = [a | b | c, a | b, b | c, c | a, a, b, c];
    Ok(terms.iter().fold(false, |acc, &e| acc ^ phi.eval(e)))
}

/// Every ordered triple of pairwise disjoint events over `n` histories.
pub fn disjoint_triples(n: usize) -> impl Iterator<Item = (Event, Event, Event)> {
    let count = 4usize.pow(n as u32);
    (0..count).map(move |code| {
        let (mut a, mut b, mut c) = (0u64, 0u64, 0u64);
        for i in 0..n {
            match code >> (2 * i) & 3 {
                1 => a |= 1 << i,
                2 => b |= 1 << i,
                3 => c |= 1 << i,
                _ => {}
            }
        }
        (Event(a), Event(b), Event(c))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleSummary {
    pub coevents: usize,
    pub triples: usize,
    /// (co-event, triple) cases with R outside {0, 1}.
    pub r_out_of_range: usize,
    /// Cases with R mod 2 ≠ Q.
    pub parity_mismatches: usize,
}

/// R and Q over every disjoint triple for each given co-event.
pub fn triple_summary(coevents: &[CoEvent]) -> Result<TripleSummary, CournotError> {
    let n = coevents.first().map_or(0, |c| c.space().len());
    let mut s = TripleSummary { coevents: coevents.len(), triples: 4usize.pow(n as u32), r_out_of_range: 0, parity_mismatches: 0 };
    for phi in coevents {
        for (a, b, c) in disjoint_triples(n) {
            let r = r_functional(phi, a, b, c)?;
            if !(0..=1).contains(&r) {
                s.r_out_of_range += 1;
            }
            if (r.rem_euclid(2) == 1) != q_functional(phi, a, b, c)? {
                s.parity_mismatches += 1;
            }
        }
    }
    Ok(s)
}

/// Dual maps of every non-empty event: all multiplicative co-events on the space.
pub fn all_multiplicative(space: &measure_core::SampleSpace) -> Vec<CoEvent> {
    canonical_events(space.len())
        .skip(1)
        .map(|a| CoEvent::dual_of(space, a).expect("non-empty"))
        .collect()
}

fn check_weights(weights: &[(CoEvent, BigRational)]) -> Result<(), CournotError> {
    if let Some((phi, w)) = weights.iter().find(|(_, w)| w.is_negative()) {
        return Err(CournotError::BadWeights(format!("weight {w} on {phi} is negative")));
    }
    let total: BigRational = weights.iter().map(|(_, w)| w.clone()).sum();
    if !total.is_one() {
        return Err(CournotError::BadWeights(format!("weights sum to {total}")));
    }
    Ok(())
}

/// ℙ_S({φ : φ(A) = 1}) = μ(A) for every event A.
pub fn check_coevent_probability_constraint(
    theory: &HistoriesTheory,
    weights: &[(CoEvent, BigRational)],
) -> Result<bool, CournotError> {
    check_weights(weights)?;
    let cap = theory.caps().enumeration;
    if theory.len() > cap {
        return Err(CournotError::TooLarge { what: "sample space", size: theory.len(), cap });
    }
    for a in canonical_events(theory.len()) {
        let p: BigRational = weights.iter().filter(|(phi, _)| phi.eval(a)).map(|(_, w)| w.clone()).sum();
        let mu = theory.measure(a)?;
        if mu.cmp_rational(&p) != std::cmp::Ordering::Equal {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest space for the vertex enumeration.
pub const VERTEX_CAP: usize = 3;

/// Exact solutions of `rows · x = rhs` with columns restricted to `cols`, by Gauss–Jordan.
fn solve_on(rows: &[Vec<BigRational>], rhs: &[BigRational], cols: &[usize]) -> Option<Vec<BigRational>> {
    let k = cols.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| cols.iter().map(|&c| r[c].clone()).chain(std::iter::once(b.clone())).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            return None;
        };
        m.swap(pivot_row, p);
        let lead = m[pivot_row][col].clone();
        for x in m[pivot_row].iter_mut() {
            *x = &*x / &lead;
        }
        for r in 0..m.len() {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pr = m[pivot_row].clone();
                for (x, y) in m[r].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| m[i][k].clone()).collect())
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// Vertices of {w ≥ 0 : Σ_φ w_φ φ̃(A) = μ(A) ∀A, Σ w = 1} over the given co-events.
///
/// Every feasible weight vector is a convex combination of these, so a co-event
/// that gets zero weight at every vertex gets zero weight in every solution.
pub fn feasible_vertices(theory: &HistoriesTheory, coevents: &[CoEvent]) -> Result<Vec<Vec<BigRational>>, CournotError> {
    if theory.len() > VERTEX_CAP {
        return Err(CournotError::TooLarge { what: "sample space", size: theory.len(), cap: VERTEX_CAP });
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in canonical_events(theory.len()) {
        rows.push(coevents.iter().map(|phi| if phi.eval(a) { BigRational::one() } else { BigRational::zero() }).collect());
        let mu = theory.measure(a)?;
        rhs.push(mu.as_exact().cloned().ok_or(coevent_engine::EngineError::NotExactMode)?);
    }
    rows.push(vec![BigRational::one(); coevents.len()]);
    rhs.push(BigRational::one());
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for k in 1..=coevents.len().min(rows.len()) {
        for cols in subsets_of_size(coevents.len(), k) {
            if let Some(x) = solve_on(&rows, &rhs, &cols) {
                if x.iter().any(|v| v.is_negative()) {
                    continue;
                }
                let mut w = vec![BigRational::zero(); coevents.len()];
                for (&c, v) in cols.iter().zip(x) {
                    w[c] = v;
                }
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSupport {
    pub vertices: usize,
    /// Co-events of degree above two that carry weight at some vertex.
    pub non_quadratic_with_mass: Vec<String>,
}

/// Feasible vertices over all multiplicative co-events, and which non-quadratic ones they use.
pub fn multiplicative_weight_support(theory: &HistoriesTheory) -> Result<WeightSupport, CournotError> {
    let coevents = all_multiplicative(theory.space());
    let vertices = feasible_vertices(theory, &coevents)?;
    let mut bad = Vec::new();
    for (i, phi) in coevents.iter().enumerate() {
        if phi.degree() > 2 && vertices.iter().any(|w| !w[i].is_zero()) {
            bad.push(phi.to_string());
        }
    }
    Ok(WeightSupport { vertices: vertices.len(), non_quadratic_with_mass: bad })
}
