use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::caps::Caps;
use crate::error::MeasureError;
use crate::event::{canonical_events, Event, Partition, SampleSpace};
use crate::scalar::{rational_to_f64, Real};

pub type ExactComplex = Complex<BigRational>;

/// Matrix storage, row-major. The arithmetic mode is uniform per matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Exact(Vec<ExactComplex>),
    Float(Vec<Complex64>),
}

/// Hermitian form on fine-grained histories, extended bilinearly to events.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoherenceFunctional {
    n: usize,
    entries: Entries,
    tolerance: f64,
}

impl DecoherenceFunctional {
    pub fn exact(n: usize, entries: Vec<ExactComplex>) -> Result<Self, MeasureError> {
        let d = Self { n, entries: Entries::Exact(entries), tolerance: 0.0 };
        d.validate()?;
        Ok(d)
    }

    /// Exact real symmetric matrix given row by row.
    pub fn exact_real(rows: Vec<Vec<BigRational>>) -> Result<Self, MeasureError> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MeasureError::BadDimension { expected: n, found: row.len() });
            }
            flat.extend(row.into_iter().map(|re| Complex::new(re, BigRational::zero())));
        }
        Self::exact(n, flat)
    }

    /// Floating matrix; `tolerance` defaults to 1e-9 times the largest entry modulus.
    pub fn float(n: usize, entries: Vec<Complex64>, tolerance: Option<f64>) -> Result<Self, MeasureError> {
        let max = entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tolerance = tolerance.unwrap_or(1e-9 * max.max(f64::MIN_POSITIVE));
        let d = Self { n, entries: Entries::Float(entries), tolerance };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), MeasureError> {
        let n = self.n;
        let len = match &self.entries {
            Entries::Exact(v) => v.len(),
            Entries::Float(v) => v.len(),
        };
        if len != n * n {
            return Err(MeasureError::BadDimension { expected: n, found: len });
        }
        match &self.entries {
            Entries::Exact(v) => {
                for i in 0..n {
                    for j in i..n {
                        if v[i * n + j] != v[j * n + i].conj() {
                            return Err(MeasureError::NotHermitian(i, j));
                        }
                    }
                    if v[i * n + i].re.is_negative() {
                        return Err(MeasureError::NegativeDiagonal(i));
                    }
                }
            }
            Entries::Float(v) => {
                let tol = self.tolerance;
                for i in 0..n {
                    for j in i..n {
                        if (v[i * n + j] - v[j * n + i].conj()).norm() > tol {
                            return Err(MeasureError::NotHermitian(i, j));
                        }
                    }
                    if v[i * n + i].re < -tol {
                        return Err(MeasureError::NegativeDiagonal(i));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.entries, Entries::Exact(_))
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> Complex64 {
        match &self.entries {
            Entries::Exact(v) => {
                let z = &v[i * self.n + j];
                Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
            }
            Entries::Float(v) => v[i * self.n + j],
        }
    }

    pub fn entry_exact(&self, i: usize, j: usize) -> Option<&ExactComplex> {
        match &self.entries {
            Entries::Exact(v) => Some(&v[i * self.n + j]),
            Entries::Float(_) => None,
        }
    }

    /// D(A, B) by bilinear extension.
    pub fn pair(&self, a: Event, b: Event) -> ComplexValue {
        match &self.entries {
            Entries::Exact(v) => {
                let mut acc = Complex::new(BigRational::zero(), BigRational::zero());
                for i in a.iter() {
                    for j in b.iter() {
                        acc = acc + v[i * self.n + j].clone();
                    }
                }
                ComplexValue::Exact(acc)
            }
            Entries::Float(v) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in a.iter() {
                    for j in b.iter() {
                        acc += v[i * self.n + j];
                    }
                }
                ComplexValue::Float(acc)
            }
        }
    }

    /// Real 2n x 2n embedding `[[Re, -Im], [Im, Re]]`, whose spectrum doubles the complex one.
    fn real_embedding(&self) -> DMatrix<f64> {
        let n = self.n;
        DMatrix::from_fn(2 * n, 2 * n, |r, c| {
            let z = self.entry_f64(r % n, c % n);
            match (r < n, c < n) {
                (true, true) | (false, false) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
            }
        })
    }

    /// Eigenvalues of the Hermitian matrix, ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.real_embedding());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        vals.into_iter().step_by(2).collect()
    }
}

/// Value of D on a pair of events, exact or floating.
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexValue {
    Exact(ExactComplex),
    Float(Complex64),
}

impl ComplexValue {
    pub fn re(&self) -> Real {
        match self {
            ComplexValue::Exact(z) => Real::Exact(z.re.clone()),
            ComplexValue::Float(z) => Real::Float(z.re),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            ComplexValue::Exact(z) => Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im)),
            ComplexValue::Float(z) => *z,
        }
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            ComplexValue::Exact(z) => z.re.is_zero() && z.im.is_zero(),
            ComplexValue::Float(z) => z.norm() <= tol,
        }
    }
}

/// Precomputed measures of every event of a small space.
#[derive(Debug)]
enum MeasureTable {
    /// `values[mask] / scale` is the exact measure.
    Scaled { scale: BigInt, values: Vec<i128> },
    Big(Vec<BigRational>),
    Float(Vec<f64>),
}

/// A finite sample space with its decoherence functional and quantum measure.
#[derive(Clone, Debug)]
pub struct HistoriesTheory {
    space: SampleSpace,
    functional: DecoherenceFunctional,
    caps: Caps,
    table: Arc<OnceLock<MeasureTable>>,
}

impl PartialEq for HistoriesTheory {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.functional == other.functional
    }
}

impl HistoriesTheory {
    pub fn new(space: SampleSpace, functional: DecoherenceFunctional) -> Result<Self, MeasureError> {
        if space.len() != functional.dim() {
            return Err(MeasureError::BadDimension { expected: space.len(), found: functional.dim() * functional.dim() });
        }
        Ok(Self { space, functional, caps: Caps::from_env(), table: Arc::new(OnceLock::new()) })
    }

    /// Exact real theory from labels and rows.
    pub fn exact_real<S: Into<String>>(labels: impl IntoIterator<Item = S>, rows: Vec<Vec<BigRational>>) -> Result<Self, MeasureError> {
        let space = SampleSpace::new(labels)?;
        Self::new(space, DecoherenceFunctional::exact_real(rows)?)
    }

    /// Classical theory with the given diagonal weights.
    pub fn classical<S: Into<String>>(labels: impl IntoIterator<Item = S>, weights: Vec<BigRational>) -> Result<Self, MeasureError> {
        let n = weights.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { weights[i].clone() } else { BigRational::zero() }).collect())
            .collect();
        Self::exact_real(labels, rows)
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn functional(&self) -> &DecoherenceFunctional {
        &self.functional
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn tolerance(&self) -> f64 {
        self.functional.tolerance()
    }

    pub fn is_exact(&self) -> bool {
        self.functional.is_exact()
    }

    pub fn full(&self) -> Event {
        self.space.full()
    }

    fn check(&self, a: Event) -> Result<(), MeasureError> {
        if a.is_subset(self.full()) {
            Ok(())
        } else {
            Err(MeasureError::EventOutOfRange { bits: a.bits(), size: self.len() })
        }
    }

    /// Whether the theory is small enough for per-event tables.
    pub fn enumerable(&self) -> bool {
        self.len() <= self.caps.enumeration
    }

    pub fn require_enumerable(&self, cap: usize) -> Result<(), MeasureError> {
        if self.len() > cap {
            Err(MeasureError::SpaceTooLarge { size: self.len(), cap })
        } else {
            Ok(())
        }
    }

    fn table(&self) -> Option<&MeasureTable> {
        if !self.enumerable() {
            return None;
        }
        Some(self.table.get_or_init(|| build_table(&self.functional)))
    }

    /// Quantum measure μ(A) = D(A, A).
    pub fn measure(&self, a: Event) -> Result<Real, MeasureError> {
        self.check(a)?;
        if let Some(t) = self.table() {
            let i = a.bits() as usize;
            return Ok(match t {
                MeasureTable::Scaled { scale, values } => Real::Exact(BigRational::new(BigInt::from(values[i]), scale.clone())),
                MeasureTable::Big(v) => Real::Exact(v[i].clone()),
                MeasureTable::Float(v) => Real::Float(v[i]),
            });
        }
        self.measure_direct(a)
    }

    fn measure_direct(&self, a: Event) -> Result<Real, MeasureError> {
        match self.functional.pair(a, a) {
            ComplexValue::Exact(z) => {
                if !z.im.is_zero() {
                    return Err(MeasureError::ImaginaryResidual(rational_to_f64(&z.im)));
                }
                Ok(Real::Exact(z.re))
            }
            ComplexValue::Float(z) => {
                if z.im.abs() > self.tolerance() {
                    return Err(MeasureError::ImaginaryResidual(z.im));
                }
                Ok(Real::Float(z.re))
            }
        }
    }

    /// μ(A) as a float, for heuristics and reporting.
    pub fn measure_f64(&self, a: Event) -> f64 {
        if let Some(t) = self.table() {
            let i = a.bits() as usize;
            return match t {
                MeasureTable::Scaled { scale, values } => values[i] as f64 / scale.to_f64().unwrap_or(f64::INFINITY),
                MeasureTable::Big(v) => rational_to_f64(&v[i]),
                MeasureTable::Float(v) => v[i],
            };
        }
        self.functional.pair(a, a).to_c64().re
    }

    pub fn is_null(&self, a: Event) -> bool {
        if !a.is_subset(self.full()) {
            return false;
        }
        if let Some(t) = self.table() {
            let i = a.bits() as usize;
            return match t {
                MeasureTable::Scaled { values, .. } => values[i] == 0,
                MeasureTable::Big(v) => v[i].is_zero(),
                MeasureTable::Float(v) => v[i].abs() <= self.tolerance(),
            };
        }
        self.functional.pair(a, a).re().is_zero_within(self.tolerance())
    }

    /// Nullness of every event, indexed by mask.
    pub fn null_flags(&self) -> Result<Vec<bool>, MeasureError> {
        self.require_enumerable(self.caps.enumeration)?;
        Ok((0..1u64 << self.len()).map(|m| self.is_null(Event(m))).collect())
    }

    /// All non-empty null events in canonical order.
    pub fn enumerate_null_sets(&self) -> Result<Vec<Event>, MeasureError> {
        self.require_enumerable(self.caps.enumeration)?;
        Ok(canonical_events(self.len()).filter(|e| !e.is_empty() && self.is_null(*e)).collect())
    }

    /// I_k on k pairwise disjoint events.
    pub fn interference(&self, events: &[Event]) -> Result<Real, MeasureError> {
        let mut seen = Event::EMPTY;
        for e in events {
            self.check(*e)?;
            if !e.is_disjoint(seen) {
                return Err(MeasureError::NotDisjoint);
            }
            seen = seen | *e;
        }
        let k = events.len();
        let mut acc = if self.is_exact() { Real::Exact(BigRational::zero()) } else { Real::Float(0.0) };
        for sel in 1u64..(1u64 << k) {
            let union = (0..k).filter(|i| sel >> i & 1 == 1).fold(Event::EMPTY, |u, i| u | events[i]);
            let m = self.measure(union)?;
            acc = if (k - sel.count_ones() as usize) % 2 == 0 { acc + m } else { acc - m };
        }
        Ok(acc)
    }

    /// Least k such that every I_{k+1} vanishes.
    ///
    /// I_{k+1} on disjoint events is a sum of Möbius coefficients of μ over sets
    /// meeting every argument, so the level is the largest support of a nonzero
    /// coefficient. The zero measure counts as level 1.
    pub fn measure_level(&self, max_k: usize) -> Result<usize, MeasureError> {
        self.require_enumerable(self.caps.enumeration)?;
        let n = self.len();
        let size = 1usize << n;
        let mut level = 1usize;
        match self.table().expect("enumerable") {
            MeasureTable::Scaled { values, .. } => {
                let mut m = values.clone();
                mobius(&mut m, n, |a, b| a - b);
                for (s, v) in m.iter().enumerate() {
                    if *v != 0 {
                        level = level.max(s.count_ones() as usize);
                    }
                }
            }
            MeasureTable::Big(values) => {
                let mut m = values.clone();
                mobius(&mut m, n, |a, b| a - b);
                for (s, v) in m.iter().enumerate() {
                    if !v.is_zero() {
                        level = level.max(s.count_ones() as usize);
                    }
                }
            }
            MeasureTable::Float(values) => {
                let mut m = values.clone();
                mobius(&mut m, n, |a, b| a - b);
                let tol = self.tolerance() * 4.0;
                for (s, v) in m.iter().enumerate().take(size) {
                    if v.abs() > tol {
                        level = level.max(s.count_ones() as usize);
                    }
                }
            }
        }
        if level > max_k {
            Err(MeasureError::Undetermined(max_k))
        } else {
            Ok(level)
        }
    }

    /// Positive semidefiniteness with slack 1e-10 times the spectral radius.
    pub fn is_strongly_positive(&self) -> bool {
        let spec = self.functional.spectrum();
        let radius = spec.iter().map(|x| x.abs()).fold(0.0, f64::max);
        spec.first().map_or(true, |&min| min >= -1e-10 * radius.max(f64::MIN_POSITIVE))
    }

    pub fn spectrum(&self) -> Vec<f64> {
        self.functional.spectrum()
    }

    /// Theory whose histories are the blocks of `partition`.
    pub fn coarse_grain(&self, partition: &Partition) -> Result<HistoriesTheory, MeasureError> {
        let blocks = partition.blocks();
        let k = blocks.len();
        let space = SampleSpace::new(partition.names().to_vec())?;
        let functional = match self.functional.entries() {
            Entries::Exact(_) => {
                let mut flat = Vec::with_capacity(k * k);
                for a in blocks {
                    for b in blocks {
                        match self.functional.pair(*a, *b) {
                            ComplexValue::Exact(z) => flat.push(z),
                            ComplexValue::Float(_) => unreachable!(),
                        }
                    }
                }
                DecoherenceFunctional::exact(k, flat)?
            }
            Entries::Float(_) => {
                let mut flat = Vec::with_capacity(k * k);
                for a in blocks {
                    for b in blocks {
                        flat.push(self.functional.pair(*a, *b).to_c64());
                    }
                }
                DecoherenceFunctional::float(k, flat, Some(self.tolerance()))?
            }
        };
        Ok(HistoriesTheory { space, functional, caps: self.caps, table: Arc::new(OnceLock::new()) })
    }

    /// True iff all off-diagonal D(A_i, A_j) vanish.
    pub fn is_decoherent(&self, partition: &Partition) -> bool {
        let blocks = partition.blocks();
        for (i, a) in blocks.iter().enumerate() {
            for b in &blocks[i + 1..] {
                if !self.functional.pair(*a, *b).is_zero_within(self.tolerance()) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether μ(Ω) = 1.
    pub fn is_normalized(&self) -> bool {
        match self.measure(self.full()) {
            Ok(Real::Exact(r)) => r.is_one(),
            Ok(Real::Float(x)) => (x - 1.0).abs() <= self.tolerance().max(1e-12),
            Err(_) => false,
        }
    }
}

fn mobius<T: Clone>(values: &mut [T], n: usize, sub: impl Fn(T, T) -> T) {
    for bit in 0..n {
        let b = 1usize << bit;
        for s in 0..values.len() {
            if s & b != 0 {
                values[s] = sub(values[s].clone(), values[s ^ b].clone());
            }
        }
    }
}

fn build_table(d: &DecoherenceFunctional) -> MeasureTable {
    let n = d.dim();
    match d.entries() {
        Entries::Float(v) => {
            let re: Vec<f64> = v.iter().map(|z| z.re).collect();
            MeasureTable::Float(dp_table(n, |i, j| re[i * n + j], 0.0, |a, b| a + b, |a| 2.0 * a))
        }
        Entries::Exact(v) => {
            let scale = v.iter().fold(BigInt::one(), |l, z| l.lcm(z.re.denom()));
            let scaled: Option<Vec<i64>> = v
                .iter()
                .map(|z| (z.re.numer() * (&scale / z.re.denom())).to_i64())
                .collect();
            // Sums of up to 2^40 entries each below 2^63 stay inside i128.
            match scaled {
                Some(m) if n <= 40 => {
                    MeasureTable::Scaled { scale, values: dp_table(n, |i, j| m[i * n + j] as i128, 0i128, |a, b| a + b, |a| 2 * a) }
                }
                _ => {
                    let re: Vec<BigRational> = v.iter().map(|z| z.re.clone()).collect();
                    MeasureTable::Big(dp_table(
                        n,
                        |i, j| re[i * n + j].clone(),
                        BigRational::zero(),
                        |a, b| a + b,
                        |a| &a + &a,
                    ))
                }
            }
        }
    }
}

/// μ(A) = μ(A') + M_xx + 2 Σ_{j∈A'} M_xj where x is the lowest element and A' = A \ {x}.
fn dp_table<T: Clone>(
    n: usize,
    entry: impl Fn(usize, usize) -> T,
    zero: T,
    add: impl Fn(T, T) -> T,
    double: impl Fn(T) -> T,
) -> Vec<T> {
    let size = 1usize << n;
    let mut out = vec![zero.clone(); size];
    for mask in 1..size {
        let x = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut cross = zero.clone();
        let mut r = rest;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            cross = add(cross, entry(x, j));
            r &= r - 1;
        }
        out[mask] = add(add(out[rest].clone(), entry(x, x)), double(cross));
    }
    out
}
