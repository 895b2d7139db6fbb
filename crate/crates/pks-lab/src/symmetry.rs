use crate::rays::{PeresSet, Ray};

/// Signed permutation of coordinates: `(g v)[k] = signs[k] * v[perm[k]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PksSymmetry {
    pub perm: [usize; 3],
    pub signs: [i8; 3],
    /// Induced permutation of the ray indices.
    pub image: Vec<usize>,
}

impl PksSymmetry {
    pub fn new(set: &PeresSet, perm: [usize; 3], signs: [i8; 3]) -> Self {
        let image = set
            .rays
            .iter()
            .map(|r| {
                let v = Ray([0, 1, 2].map(|k| signs[k] * r.0[perm[k]]));
                set.index_of(v).expect("signed permutations preserve the Peres set")
            })
            .collect();
        Self { perm, signs, image }
    }

    pub fn identity(set: &PeresSet) -> Self {
        Self::new(set, [0, 1, 2], [1, 1, 1])
    }

    /// Reflection exchanging the x and y axes.
    pub fn xy_swap(set: &PeresSet) -> Self {
        Self::new(set, [1, 0, 2], [1, 1, 1])
    }

    pub fn apply(&self, ray: usize) -> usize {
        self.image[ray]
    }

    pub fn inverse(&self) -> PksSymmetry {
        let mut perm = [0; 3];
        let mut signs = [1; 3];
        for k in 0..3 {
            perm[self.perm[k]] = k;
            signs[self.perm[k]] = self.signs[k];
        }
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        PksSymmetry { perm, signs, image }
    }

    /// Colouring action `(gγ)(u) = γ(g u)`.
    pub fn act_colouring(&self, greens: u64) -> u64 {
        (0..self.image.len()).filter(|&i| greens >> self.image[i] & 1 == 1).fold(0, |m, i| m | 1 << i)
    }
}

/// The 24 distinct ray permutations induced by signed coordinate permutations.
pub fn symmetry_group(set: &PeresSet) -> Vec<PksSymmetry> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out: Vec<PksSymmetry> = Vec::new();
    for perm in perms {
        for s in 0..8 {
            let signs = [0, 1, 2].map(|k| if s >> k & 1 == 1 { -1 } else { 1 });
            let g = PksSymmetry::new(set, perm, signs);
            if !out.iter().any(|h| h.image == g.image) {
                out.push(g);
            }
        }
    }
    out
}
