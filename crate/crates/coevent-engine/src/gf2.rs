//! Dense bit vectors and incremental row reduction over GF(2).

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, on: bool) {
        if self.get(i) != on {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_not(&self, other: &BitVec) -> BitVec {
        BitVec { words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(), len: self.len }
    }

    pub fn is_subset(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the intersection with `other`.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Row space kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(usize, BitVec)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut BitVec) {
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds a row; returns false if it was already in the span.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.first_one() else { return false };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Basis of {x : row · x = 0 for every row}; one vector per free column,
    /// with that column set and no other free column set.
    pub fn kernel(&self) -> Vec<(usize, BitVec)> {
        let mut is_pivot = vec![false; self.cols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        (0..self.cols)
            .filter(|c| !is_pivot[*c])
            .map(|f| {
                let mut x = BitVec::zeros(self.cols);
                x.flip(f);
                for (p, row) in &self.rows {
                    if row.get(f) {
                        x.flip(*p);
                    }
                }
                (f, x)
            })
            .collect()
    }
}

/// Affine system A x = b, built row by row.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    vars: usize,
    echelon: Echelon,
    consistent: bool,
}

impl AffineSystem {
    pub fn new(vars: usize) -> Self {
        Self { vars, echelon: Echelon::new(vars + 1), consistent: true }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Adds `row · x = rhs`; `row` has `vars` bits.
    pub fn add(&mut self, row: &BitVec, rhs: bool) {
        if !self.consistent {
            return;
        }
        let mut v = BitVec::zeros(self.vars + 1);
        for i in row.ones() {
            v.flip(i);
        }
        v.set(self.vars, rhs);
        let mut r = v.clone();
        self.echelon.reduce(&mut r);
        if r.first_one() == Some(self.vars) {
            self.consistent = false;
            return;
        }
        self.echelon.insert(v);
    }

    /// One solution with free variables set to zero.
    pub fn solution(&self) -> Option<BitVec> {
        if !self.consistent {
            return None;
        }
        let mut x = BitVec::zeros(self.vars);
        for (p, row) in &self.echelon.rows {
            if row.get(self.vars) {
                x.flip(*p);
            }
        }
        Some(x)
    }
}
