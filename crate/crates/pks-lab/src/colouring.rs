use serde::Serialize;

use crate::rays::PeresSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Colour {
    Green,
    Red,
}

/// Colouring of the 33 rays; bit i set means ray i is green.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PeresColouring(pub u64);

impl PeresColouring {
    pub const ALL_RED: PeresColouring = PeresColouring(0);

    pub fn from_greens(greens: &[usize]) -> Self {
        Self(greens.iter().fold(0, |m, &i| m | 1 << i))
    }

    pub fn colour(self, ray: usize) -> Colour {
        if self.0 >> ray & 1 == 1 {
            Colour::Green
        } else {
            Colour::Red
        }
    }

    pub fn is_green(self, ray: usize) -> bool {
        self.0 >> ray & 1 == 1
    }

    pub fn greens(self) -> Vec<usize> {
        (0..64).filter(|&i| self.is_green(i)).collect()
    }

    pub fn green_names(self, set: &PeresSet) -> Vec<String> {
        self.greens().into_iter().map(|i| set.name(i).to_string()).collect()
    }

    /// Indices of bases with no green ray or more than one.
    pub fn basis_violations(self, set: &PeresSet) -> Vec<usize> {
        (0..set.bases.len()).filter(|&b| (set.basis_mask(set.bases[b]) & self.0).count_ones() != 1).collect()
    }

    /// Orthogonal pairs coloured green twice.
    pub fn pair_violations(self, set: &PeresSet) -> Vec<usize> {
        (0..set.pairs.len())
            .filter(|&p| {
                let (i, j) = set.pairs[p];
                self.is_green(i) && self.is_green(j)
            })
            .collect()
    }
}

/// Exactly one green per basis and no orthogonal pair both green.
pub fn check_consistent(set: &PeresSet, c: PeresColouring) -> bool {
    c.basis_violations(set).is_empty() && c.pair_violations(set).is_empty()
}

/// All colourings meeting every constraint. Contradictory constraints give the empty event.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SymbolicEvent {
    pub green: u64,
    pub red: u64,
}

impl SymbolicEvent {
    pub fn new(constraints: &[(usize, Colour)]) -> Self {
        let mut e = SymbolicEvent { green: 0, red: 0 };
        for &(i, c) in constraints {
            match c {
                Colour::Green => e.green |= 1 << i,
                Colour::Red => e.red |= 1 << i,
            }
        }
        e
    }

    pub fn omega() -> Self {
        SymbolicEvent { green: 0, red: 0 }
    }

    /// R_S: every ray of `rays` red.
    pub fn all_red(rays: &[usize]) -> Self {
        SymbolicEvent { green: 0, red: rays.iter().fold(0, |m, &i| m | 1 << i) }
    }

    /// G_S: every ray of `rays` green.
    pub fn all_green(rays: &[usize]) -> Self {
        SymbolicEvent { green: rays.iter().fold(0, |m, &i| m | 1 << i), red: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.green & self.red != 0
    }

    pub fn contains(&self, c: PeresColouring) -> bool {
        !self.is_empty() && c.0 & self.green == self.green && c.0 & self.red == 0
    }

    pub fn intersect(&self, other: &SymbolicEvent) -> SymbolicEvent {
        SymbolicEvent { green: self.green | other.green, red: self.red | other.red }
    }

    /// Every colouring of the event lies in one member of the null family.
    pub fn within_null_family(&self, set: &PeresSet) -> bool {
        if self.is_empty() {
            return true;
        }
        let in_red = |b: &[usize; 3]| set.basis_mask(*b) & !self.red == 0;
        let in_green = |p: &(usize, usize)| (1u64 << p.0 | 1u64 << p.1) & !self.green == 0;
        if set.bases.iter().any(in_red) || set.pairs.iter().any(in_green) {
            return true;
        }
        // R_B ⊔ G_P with x ∈ B ∩ P and x unconstrained: the rest of B red and the rest of P green.
        set.bases.iter().any(|b| {
            set.pairs.iter().any(|&(i, j)| {
                b.iter().any(|&x| {
                    let y = if x == i { j } else if x == j { i } else { return false };
                    let rest = set.basis_mask(*b) & !(1u64 << x);
                    rest & !self.red == 0 && self.green >> y & 1 == 1
                })
            })
        })
    }
}

/// Member of the assumed null family: R_B, G_P, or R_B ⊔ G_P with B ∩ P ≠ ∅.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NullSet {
    Red(usize),
    Green(usize),
    Union(usize, usize),
}

impl NullSet {
    pub fn contains(self, set: &PeresSet, c: PeresColouring) -> bool {
        let red = |b: usize| set.basis_mask(set.bases[b]) & c.0 == 0;
        let green = |p: usize| {
            let (i, j) = set.pairs[p];
            c.is_green(i) && c.is_green(j)
        };
        match self {
            NullSet::Red(b) => red(b),
            NullSet::Green(p) => green(p),
            NullSet::Union(b, p) => red(b) || green(p),
        }
    }

    pub fn count_in(self, set: &PeresSet, support: &[PeresColouring]) -> usize {
        support.iter().filter(|&&c| self.contains(set, c)).count()
    }
}

pub fn pks_null_family(set: &PeresSet) -> Vec<NullSet> {
    let mut out: Vec<NullSet> = (0..set.bases.len()).map(NullSet::Red).collect();
    out.extend((0..set.pairs.len()).map(NullSet::Green));
    for b in 0..set.bases.len() {
        let mask = set.basis_mask(set.bases[b]);
        for (p, &(i, j)) in set.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 || mask >> j & 1 == 1 {
                out.push(NullSet::Union(b, p));
            }
        }
    }
    out
}

/// The R_B and G_P sets containing a colouring.
pub fn pks_sets_containing(set: &PeresSet, c: PeresColouring) -> Vec<NullSet> {
    let mut out: Vec<NullSet> = (0..set.bases.len())
        .filter(|&b| set.basis_mask(set.bases[b]) & c.0 == 0)
        .map(NullSet::Red)
        .collect();
    out.extend(c.pair_violations(set).into_iter().map(NullSet::Green));
    out
}
