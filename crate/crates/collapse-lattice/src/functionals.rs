use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::LatticeError;
use crate::model::{CMat4, LatticeModel};

pub const HISTORY_CAP: usize = 4096;
pub const STATE_CAP: usize = 256;
pub const COUPLED_CAP: usize = 256;
pub const PAIR_MATRIX_CAP: usize = 4096;
pub const ENVIRONMENT_CAP: usize = 4096;

pub type CMat = DMatrix<Complex64>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check(what: &'static str, size: usize, cap: usize) -> Result<(), LatticeError> {
    if size > cap {
        Err(LatticeError::TooLarge { what, size, cap })
    } else {
        Ok(())
    }
}

pub fn hamming(a: usize, b: usize) -> u32 {
    (a ^ b).count_ones()
}

/// Applies a two-qubit gate to bits (first, second) of the basis index; the gate's
/// row/column index is 2·first + second.
pub fn apply_gate(v: &mut DVector<Complex64>, first: usize, second: usize, u: &CMat4) {
    let (mf, ms) = (1usize << first, 1usize << second);
    for base in 0..v.len() {
        if base & (mf | ms) != 0 {
            continue;
        }
        let idx = [base, base | ms, base | mf, base | mf | ms];
        let amp = idx.map(|i| v[i]);
        for (r, &i) in idx.iter().enumerate() {
            v[i] = (0..4).map(|k| u[(r, k)] * amp[k]).sum();
        }
    }
}

/// Multiplies amplitudes by `on` where `bit` equals `value` and by `off` elsewhere.
fn scale_bit(v: &mut DVector<Complex64>, bit: usize, value: usize, on: f64, off: f64) {
    for (i, z) in v.iter_mut().enumerate() {
        *z *= if i >> bit & 1 == value { on } else { off };
    }
}

#[derive(Clone, Copy, Debug)]
enum Record {
    Project,
    Kraus(f64),
}

/// Amplitude vectors indexed by history: evolve over a vertex, then project (or
/// partially collapse) its two outgoing links.
fn branches(model: &LatticeModel, record: Record) -> Vec<DVector<Complex64>> {
    let mut out = vec![model.state().clone()];
    for (i, (v, r)) in model.order().iter().zip(model.unitaries()).enumerate() {
        let (left, right) = v.slots(model.width());
        let mut next = vec![DVector::zeros(0); out.len() * 4];
        for (h, b) in out.iter().enumerate() {
            let mut ev = b.clone();
            apply_gate(&mut ev, left, right, r);
            for code in 0..4 {
                let (fl, fr) = (code & 1, code >> 1);
                let mut w = ev.clone();
                match record {
                    Record::Project => {
                        scale_bit(&mut w, left, fl, 1.0, 0.0);
                        scale_bit(&mut w, right, fr, 1.0, 0.0);
                    }
                    Record::Kraus(x) => {
                        let k = 1.0 / (1.0 + x * x).sqrt();
                        scale_bit(&mut w, left, fl, k, x * k);
                        scale_bit(&mut w, right, fr, k, x * k);
                    }
                }
                next[h | code << (2 * i)] = w;
            }
        }
        out = next;
    }
    out
}

fn gram(vectors: &[DVector<Complex64>]) -> CMat {
    let dim = vectors.first().map_or(0, |v| v.len());
    let b = CMat::from_fn(dim, vectors.len(), |r, col| vectors[col][r]);
    b.adjoint() * b
}

fn check_unitary_caps(model: &LatticeModel) -> Result<(), LatticeError> {
    check("histories", model.histories(), HISTORY_CAP)?;
    check("state dimension", model.state_dim(), STATE_CAP)
}

/// Branch vectors |Φⁿ⟩ = C(Φⁿ)|ψ₀⟩ in history order.
pub fn unitary_branches(model: &LatticeModel) -> Result<Vec<DVector<Complex64>>, LatticeError> {
    check_unitary_caps(model)?;
    Ok(branches(model, Record::Project))
}

/// D_q(Φ, Φ̄) = ⟨Φ|Φ̄⟩.
pub fn unitary_decoherence(model: &LatticeModel) -> Result<CMat, LatticeError> {
    Ok(gram(&unitary_branches(model)?))
}

/// Kraus-chain amplitudes |αⁿ⟩ in history order.
pub fn collapse_branches(model: &LatticeModel) -> Result<Vec<DVector<Complex64>>, LatticeError> {
    check_unitary_caps(model)?;
    Ok(branches(model, Record::Kraus(model.x())))
}

/// D_c(α, ᾱ) = ⟨α|ᾱ⟩ δ(α, ᾱ).
pub fn collapse_decoherence(model: &LatticeModel) -> Result<CMat, LatticeError> {
    let amps = collapse_branches(model)?;
    let n = amps.len();
    let mut d = CMat::zeros(n, n);
    for (i, a) in amps.iter().enumerate() {
        d[(i, i)] = a.dotc(a);
    }
    Ok(d)
}

/// D_qc over pairs (Φ, α), stored through D_q and the suppression weights.
///
/// Pair index is `α · histories + Φ`.
#[derive(Clone, Debug)]
pub struct CoupledDecoherence {
    dq: CMat,
    x: f64,
    steps: usize,
}

impl CoupledDecoherence {
    pub fn histories(&self) -> usize {
        self.dq.nrows()
    }

    pub fn unitary(&self) -> &CMat {
        &self.dq
    }

    /// X^d(Φ, α) / (1 + X²)ⁿ, one side of the suppression factor.
    pub fn weight(&self, phi: usize, alpha: usize) -> f64 {
        self.x.powi(hamming(phi, alpha) as i32) / (1.0 + self.x * self.x).powi(self.steps as i32)
    }

    pub fn entry(&self, phi: usize, alpha: usize, phib: usize, alphab: usize) -> Complex64 {
        if alpha != alphab {
            return Complex64::new(0.0, 0.0);
        }
        self.dq[(phi, phib)] * self.weight(phi, alpha) * self.weight(phib, alpha)
    }

    pub fn pair_entry(&self, i: usize, j: usize) -> Complex64 {
        let h = self.histories();
        self.entry(i % h, i / h, j % h, j / h)
    }

    pub fn to_matrix(&self) -> Result<CMat, LatticeError> {
        let pairs = self.histories() * self.histories();
        check("history pairs", pairs, PAIR_MATRIX_CAP)?;
        Ok(CMat::from_fn(pairs, pairs, |i, j| self.pair_entry(i, j)))
    }

    /// D_qc(Ω_q × {α}, Ω_q × {ᾱ}) by summing over both quantum histories.
    pub fn coarse_over_quantum(&self) -> CMat {
        let h = self.histories();
        let mut out = CMat::zeros(h, h);
        for alpha in 0..h {
            let w = DVector::from_fn(h, |phi, _| c(self.weight(phi, alpha)));
            out[(alpha, alpha)] = w.dot(&(&self.dq * &w));
        }
        out
    }

    /// D̃_q(Φ, Φ̄) = D_qc({Φ} × Ω_c, {Φ̄} × Ω_c) by summing over the classical history.
    pub fn coarse_over_classical(&self) -> CMat {
        let h = self.histories();
        CMat::from_fn(h, h, |phi, phib| {
            let s: f64 = (0..h).map(|alpha| self.weight(phi, alpha) * self.weight(phib, alpha)).sum();
            self.dq[(phi, phib)] * s
        })
    }
}

pub fn coupled_decoherence(model: &LatticeModel) -> Result<CoupledDecoherence, LatticeError> {
    check("histories", model.histories(), COUPLED_CAP)?;
    Ok(CoupledDecoherence { dq: unitary_decoherence(model)?, x: model.x(), steps: model.steps() })
}

/// Per-link partial measurement on (field qubit, environment qubit), index 2·field + env.
pub fn partial_measurement(x: f64) -> CMat4 {
    let k = 1.0 / (1.0 + x * x).sqrt();
    #[rustfmt::skip]
    let m = CMat4::new(
        c(k),     c(x * k),  c(0.0),    c(0.0),
        c(x * k), c(-k),     c(0.0),    c(0.0),
        c(0.0),   c(0.0),    c(x * k),  c(k),
        c(0.0),   c(0.0),    c(k),      c(-x * k),
    );
    m
}

/// Branch vectors |Φⁿ, Eⁿ⟩ in the joint field and environment space.
///
/// Environment qubit for link l_a sits at bit 2N + a − 1. Branch index is
/// `E · histories + Φ`.
pub fn environment_branches(model: &LatticeModel) -> Result<Vec<DVector<Complex64>>, LatticeError> {
    let q = 2 * model.width();
    let dim = model.state_dim() << model.links();
    check("field and environment dimension", dim, ENVIRONMENT_CAP)?;
    check("history pairs", model.histories() * model.histories(), PAIR_MATRIX_CAP)?;
    let u = partial_measurement(model.x());
    let mut start = DVector::zeros(dim);
    start.rows_mut(0, model.state_dim()).copy_from(model.state());
    let mut out = vec![start];
    for (i, (v, r)) in model.order().iter().zip(model.unitaries()).enumerate() {
        let (left, right) = v.slots(model.width());
        let (el, er) = (q + 2 * i, q + 2 * i + 1);
        let mut next = vec![DVector::zeros(0); out.len() * 16];
        for (h, b) in out.iter().enumerate() {
            let mut ev = b.clone();
            apply_gate(&mut ev, left, right, r);
            apply_gate(&mut ev, left, el, &u);
            apply_gate(&mut ev, right, er, &u);
            for code in 0..16 {
                let (fl, fr, ql, qr) = (code & 1, code >> 1 & 1, code >> 2 & 1, code >> 3);
                let mut w = ev.clone();
                scale_bit(&mut w, left, fl, 1.0, 0.0);
                scale_bit(&mut w, el, ql, 1.0, 0.0);
                scale_bit(&mut w, right, fr, 1.0, 0.0);
                scale_bit(&mut w, er, qr, 1.0, 0.0);
                let phi = h % (1 << (2 * i)) | (fl | fr << 1) << (2 * i);
                let env = h >> (2 * i) | (ql | qr << 1) << (2 * i);
                next[env << (2 * (i + 1)) | phi] = w;
            }
        }
        out = next;
    }
    Ok(out)
}

/// D_qe over pairs (Φ, E); entries not stored are exactly zero.
#[derive(Clone, Debug)]
pub struct EnvironmentDecoherence {
    histories: usize,
    entries: HashMap<(usize, usize), Complex64>,
}

impl EnvironmentDecoherence {
    pub fn histories(&self) -> usize {
        self.histories
    }

    pub fn pair_entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries.get(&(i, j)).copied().unwrap_or_default()
    }

    pub fn entry(&self, phi: usize, env: usize, phib: usize, envb: usize) -> Complex64 {
        let h = self.histories;
        self.pair_entry(env * h + phi, envb * h + phib)
    }

    pub fn stored(&self) -> impl Iterator<Item = (&(usize, usize), &Complex64)> {
        self.entries.iter()
    }

    pub fn to_matrix(&self) -> Result<CMat, LatticeError> {
        let pairs = self.histories * self.histories;
        check("history pairs", pairs, PAIR_MATRIX_CAP)?;
        Ok(CMat::from_fn(pairs, pairs, |i, j| self.pair_entry(i, j)))
    }
}

/// Inner products of the environment model branches. Vectors are split into
/// environment sectors and only sectors where both are nonzero contribute.
pub fn environment_decoherence(model: &LatticeModel) -> Result<EnvironmentDecoherence, LatticeError> {
    let amps = environment_branches(model)?;
    let q = model.state_dim();
    let sectors = amps.first().map_or(0, |v| v.len() / q);
    let mut by_sector: Vec<Vec<usize>> = vec![Vec::new(); sectors];
    for (i, v) in amps.iter().enumerate() {
        for (s, list) in by_sector.iter_mut().enumerate() {
            if v.rows(s * q, q).iter().any(|z| *z != Complex64::default()) {
                list.push(i);
            }
        }
    }
    let mut entries: HashMap<(usize, usize), Complex64> = HashMap::new();
    for (s, list) in by_sector.iter().enumerate() {
        for &i in list {
            let a = amps[i].rows(s * q, q);
            for &j in list {
                *entries.entry((i, j)).or_default() += a.dotc(&amps[j].rows(s * q, q));
            }
        }
    }
    Ok(EnvironmentDecoherence { histories: model.histories(), entries })
}

/// Y and Z given as history membership flags.
pub fn pair_value(d: &CMat, y: &[bool], z: &[bool]) -> Complex64 {
    let mut s = Complex64::default();
    for (i, _) in y.iter().enumerate().filter(|(_, &b)| b) {
        for (j, _) in z.iter().enumerate().filter(|(_, &b)| b) {
            s += d[(i, j)];
        }
    }
    s
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermitian_defect(d: &CMat) -> f64 {
    max_abs_diff(d, &d.adjoint())
}
