use serde::Serialize;

use crate::colouring::{pks_null_family, Colour, NullSet, PeresColouring, SymbolicEvent};
use crate::error::PksError;
use crate::rays::{PeresSet, RayType};
use crate::search::{forcing_chain, r_set};
use crate::symmetry::PksSymmetry;

/// Largest support whose subsets are walked when testing primitivity.
pub const PRIMITIVE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Linear,
    Multiplicative,
}

/// Co-event over colourings given by a finite dual.
///
/// Linear: φ(A) = |S ∩ A| mod 2. Multiplicative: φ(A) = 1 iff S ⊆ A.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PksCoEvent {
    pub kind: Kind,
    pub support: Vec<PeresColouring>,
}

impl PksCoEvent {
    pub fn new(kind: Kind, support: &[PeresColouring]) -> Self {
        let mut s = support.to_vec();
        s.sort();
        match kind {
            Kind::Multiplicative => s.dedup(),
            Kind::Linear => {
                let mut kept: Vec<PeresColouring> = Vec::new();
                for c in s {
                    if kept.last() == Some(&c) {
                        kept.pop();
                    } else {
                        kept.push(c);
                    }
                }
                s = kept;
            }
        }
        Self { kind, support: s }
    }

    fn decide(&self, hits: usize) -> bool {
        match self.kind {
            Kind::Linear => hits % 2 == 1,
            Kind::Multiplicative => hits == self.support.len(),
        }
    }

    pub fn eval(&self, e: &SymbolicEvent) -> bool {
        self.decide(self.support.iter().filter(|&&c| e.contains(c)).count())
    }

    pub fn eval_null(&self, set: &PeresSet, z: NullSet) -> bool {
        self.decide(z.count_in(set, &self.support))
    }

    pub fn is_unital(&self) -> bool {
        self.eval(&SymbolicEvent::omega())
    }

    /// Zero on every member of the null family.
    pub fn is_preclusive(&self, set: &PeresSet) -> bool {
        preclusive_support(set, self.kind, &self.support)
    }

    /// Preclusive, and no non-empty proper sub-support is preclusive.
    pub fn is_primitive(&self, set: &PeresSet) -> Result<bool, PksError> {
        let k = self.support.len();
        if k > PRIMITIVE_CAP {
            return Err(PksError::SearchFailed(format!("support of {k} exceeds {PRIMITIVE_CAP}")));
        }
        if !self.is_preclusive(set) {
            return Ok(false);
        }
        for sel in 1u32..(1 << k) - 1 {
            let sub: Vec<PeresColouring> = (0..k).filter(|i| sel >> i & 1 == 1).map(|i| self.support[i]).collect();
            if preclusive_support(set, self.kind, &sub) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The co-event with support {gγ}; it sends A to φ(g⁻¹A).
    pub fn transport(&self, g: &PksSymmetry) -> PksCoEvent {
        let inv = g.inverse();
        let support: Vec<PeresColouring> = self.support.iter().map(|c| PeresColouring(inv.act_colouring(c.0))).collect();
        PksCoEvent::new(self.kind, &support)
    }
}

fn preclusive_support(set: &PeresSet, kind: Kind, support: &[PeresColouring]) -> bool {
    let probe = PksCoEvent { kind, support: support.to_vec() };
    pks_null_family(set).into_iter().all(|z| !probe.eval_null(set, z))
}

/// The colouring that greens the first ray of each named basis and is forced from there.
pub fn peres_colouring(set: &PeresSet) -> PeresColouring {
    let first: Vec<usize> = (1..=4).map(|b| set.basis(b)[0]).collect();
    PeresColouring(forcing_chain(set, &first).greens)
}

/// γ_P and its image under the xy swap.
pub fn peres_colouring_pair(set: &PeresSet) -> (PeresColouring, PeresColouring) {
    let p = peres_colouring(set);
    let q = PeresColouring(PksSymmetry::xy_swap(set).act_colouring(p.0));
    (p, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table71Row {
    pub ray: String,
    pub first: Colour,
    pub second: Colour,
    /// φ(G_i) and φ(R_i) for φ = {γ, γ'}*.
    pub green: bool,
    pub red: bool,
}

pub fn table71(set: &PeresSet, p: PeresColouring, q: PeresColouring) -> Vec<Table71Row> {
    let phi = PksCoEvent::new(Kind::Multiplicative, &[p, q]);
    (0..set.len())
        .map(|i| Table71Row {
            ray: set.name(i).to_string(),
            first: p.colour(i),
            second: q.colour(i),
            green: phi.eval(&SymbolicEvent::all_green(&[i])),
            red: phi.eval(&SymbolicEvent::all_red(&[i])),
        })
        .collect()
}

/// The unital linear co-event γ₁₁* + γ₁₇* + γ₁₁₇* with the colourings it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearPks {
    pub gamma11: PeresColouring,
    pub gamma17: PeresColouring,
    pub gamma117: PeresColouring,
    pub coevent: PksCoEvent,
}

fn has_each_type(set: &PeresSet, mask: u64) -> bool {
    [RayType::I, RayType::II, RayType::III, RayType::IV]
        .iter()
        .all(|t| (0..set.len()).any(|i| mask >> i & 1 == 1 && set.rays[i].ray_type() == *t))
}

/// Whether both the common green rays and the common red rays of a support include every ray type.
pub fn covers_types(set: &PeresSet, support: &[PeresColouring]) -> bool {
    let all = (1u64 << set.len()) - 1;
    let green = support.iter().fold(all, |m, c| m & c.0);
    let red = support.iter().fold(all, |m, c| m & !c.0);
    has_each_type(set, green) && has_each_type(set, red)
}

/// Searches r_{B7} and r_{B11 ∪ B7} for partners of γ_P with the type-covering property.
pub fn linear_pks_coevent(set: &PeresSet) -> Result<LinearPks, PksError> {
    let gamma11 = peres_colouring(set);
    let b7 = set.basis_mask(set.basis(7));
    let b11 = set.basis_mask(set.basis(11));
    let r7 = r_set(set, b7);
    let r117 = r_set(set, b7 | b11);
    for &g17 in &r7 {
        for &g117 in &r117 {
            let support = [gamma11, g17, g117];
            if g17 == gamma11 || g117 == gamma11 || g117 == g17 || !covers_types(set, &support) {
                continue;
            }
            let coevent = PksCoEvent::new(Kind::Linear, &support);
            if coevent.is_preclusive(set) && coevent.is_unital() {
                return Ok(LinearPks { gamma11, gamma17: g17, gamma117: g117, coevent });
            }
        }
    }
    Err(PksError::SearchFailed("no partners for the linear co-event".into()))
}

/// For one ray, group elements whose transported co-events affirm G_i and R_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayCoverage {
    pub ray: String,
    pub green: Option<usize>,
    pub red: Option<usize>,
}

pub fn ray_coverage(set: &PeresSet, phi: &PksCoEvent, group: &[PksSymmetry]) -> Vec<RayCoverage> {
    (0..set.len())
        .map(|i| {
            let find = |e: &SymbolicEvent| group.iter().position(|g| phi.transport(g).eval(e));
            RayCoverage {
                ray: set.name(i).to_string(),
                green: find(&SymbolicEvent::all_green(&[i])),
                red: find(&SymbolicEvent::all_red(&[i])),
            }
        })
        .collect()
}

/// A transported co-event affirming `colour` on `ray`, built from φˢ or from {γ_P, γ_P'}*.
pub fn coevent_for_ray(set: &PeresSet, group: &[PksSymmetry], kind: Kind, ray: usize, colour: Colour) -> Result<PksCoEvent, PksError> {
    let base = match kind {
        Kind::Linear => linear_pks_coevent(set)?.coevent,
        Kind::Multiplicative => {
            let (p, q) = peres_colouring_pair(set);
            PksCoEvent::new(Kind::Multiplicative, &[p, q])
        }
    };
    let target = match colour {
        Colour::Green => SymbolicEvent::all_green(&[ray]),
        Colour::Red => SymbolicEvent::all_red(&[ray]),
    };
    group
        .iter()
        .map(|g| base.transport(g))
        .find(|c| c.eval(&target))
        .ok_or_else(|| PksError::SearchFailed(format!("no symmetry carries the co-event onto ray {}", set.name(ray))))
}
