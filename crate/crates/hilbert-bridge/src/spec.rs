use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Deserialize;

use measure_core::{DecoherenceFunctional, HistoriesTheory, SampleSpace};

use crate::error::BridgeError;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

const SPEC_TOL: f64 = 1e-12;

/// One time step: optional evolution followed by a complete set of projectors.
#[derive(Clone, Debug)]
pub struct Step {
    pub unitary: Option<CMatrix>,
    pub projectors: Vec<CMatrix>,
    pub labels: Vec<String>,
}

impl Step {
    pub fn new(projectors: Vec<CMatrix>) -> Self {
        let labels = (0..projectors.len()).map(|i| i.to_string()).collect();
        Self { unitary: None, projectors, labels }
    }

    pub fn labelled(projectors: Vec<CMatrix>, labels: &[&str]) -> Self {
        Self { unitary: None, projectors, labels: labels.iter().map(|s| s.to_string()).collect() }
    }

    pub fn with_unitary(mut self, u: CMatrix) -> Self {
        self.unitary = Some(u);
        self
    }
}

/// Initial state plus a sequence of projective steps.
#[derive(Clone, Debug)]
pub struct HilbertSpec {
    dim: usize,
    state: CVector,
    steps: Vec<Step>,
}

/// Class-operator image of the initial state for one history.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorAmplitude {
    pub history: Vec<usize>,
    pub vector: CVector,
}

fn close(a: &CMatrix, b: &CMatrix) -> bool {
    (a - b).iter().all(|z| z.norm() <= SPEC_TOL)
}

impl HilbertSpec {
    pub fn new(state: CVector, steps: Vec<Step>) -> Result<Self, BridgeError> {
        let dim = state.len();
        if dim == 0 {
            return Err(BridgeError::InvalidSpec("dimension must be positive".into()));
        }
        if (state.norm() - 1.0).abs() > SPEC_TOL {
            return Err(BridgeError::InvalidSpec(format!("state norm {} is not 1", state.norm())));
        }
        let id = CMatrix::identity(dim, dim);
        for (t, step) in steps.iter().enumerate() {
            if step.labels.len() != step.projectors.len() {
                return Err(BridgeError::InvalidSpec(format!("step {t}: one label per projector")));
            }
            if let Some(u) = &step.unitary {
                if u.shape() != (dim, dim) || !close(&(u.adjoint() * u), &id) {
                    return Err(BridgeError::InvalidSpec(format!("step {t}: evolution is not unitary")));
                }
            }
            let mut sum = CMatrix::zeros(dim, dim);
            for (i, p) in step.projectors.iter().enumerate() {
                if p.shape() != (dim, dim) {
                    return Err(BridgeError::InvalidSpec(format!("step {t}: projector {i} has wrong shape")));
                }
                if !close(&(p * p), p) || !close(&p.adjoint(), p) {
                    return Err(BridgeError::InvalidSpec(format!("step {t}: matrix {i} is not an orthogonal projector")));
                }
                for q in &step.projectors[i + 1..] {
                    if !close(&(p * q), &CMatrix::zeros(dim, dim)) {
                        return Err(BridgeError::InvalidSpec(format!("step {t}: projectors are not mutually orthogonal")));
                    }
                }
                sum += p;
            }
            if !close(&sum, &id) {
                return Err(BridgeError::InvalidSpec(format!("step {t}: projectors do not sum to the identity")));
            }
        }
        Ok(Self { dim, state, steps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn state(&self) -> &CVector {
        &self.state
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of fine-grained histories.
    pub fn history_count(&self) -> usize {
        self.steps.iter().map(|s| s.projectors.len()).product()
    }

    /// Histories in index order: the first step varies fastest.
    pub fn histories(&self) -> Vec<Vec<usize>> {
        let total = self.history_count();
        (0..total)
            .map(|mut k| {
                self.steps
                    .iter()
                    .map(|s| {
                        let i = k % s.projectors.len();
                        k /= s.projectors.len();
                        i
                    })
                    .collect()
            })
            .collect()
    }

    pub fn history_label(&self, history: &[usize]) -> String {
        history.iter().zip(&self.steps).map(|(&i, s)| s.labels[i].as_str()).collect()
    }
}

/// C_A|ψ⟩ with C_A = P_{a_k} U_k ... P_{a_1} U_1.
pub fn class_amplitude(spec: &HilbertSpec, history: &[usize]) -> Result<VectorAmplitude, BridgeError> {
    if history.len() != spec.steps.len() {
        return Err(BridgeError::WrongLength { expected: spec.steps.len(), found: history.len() });
    }
    let mut v = spec.state.clone();
    for (t, (&i, step)) in history.iter().zip(&spec.steps).enumerate() {
        let p = step.projectors.get(i).ok_or(BridgeError::IndexOutOfRange { step: t, index: i })?;
        if let Some(u) = &step.unitary {
            v = u * v;
        }
        v = p * v;
    }
    Ok(VectorAmplitude { history: history.to_vec(), vector: v })
}

/// Gram matrix of all fine-grained amplitudes as a floating theory.
pub fn build_decoherence(spec: &HilbertSpec) -> Result<HistoriesTheory, BridgeError> {
    let total = spec.history_count();
    if total > 64 {
        return Err(BridgeError::SpaceTooLarge(total));
    }
    let histories = spec.histories();
    let labels: Vec<String> = histories.iter().map(|h| spec.history_label(h)).collect();
    // Fall back to index tuples if projector labels collide.
    let labels = if SampleSpace::new(labels.clone()).is_ok() {
        labels
    } else {
        histories.iter().map(|h| h.iter().map(usize::to_string).collect::<Vec<_>>().join(".")).collect()
    };
    let amps: Vec<CVector> = histories
        .iter()
        .map(|h| class_amplitude(spec, h).map(|a| a.vector))
        .collect::<Result<_, _>>()?;
    let mut flat = Vec::with_capacity(total * total);
    for a in &amps {
        for b in &amps {
            flat.push(a.dotc(b));
        }
    }
    let d = DecoherenceFunctional::float(total, flat, None)?;
    Ok(HistoriesTheory::new(SampleSpace::new(labels)?, d)?)
}

/// Rank-one projector |v⟩⟨v| / ⟨v|v⟩.
pub fn ray_projector(v: &CVector) -> CMatrix {
    let n = v.norm_squared();
    v * v.adjoint() / Complex64::new(n, 0.0)
}

pub fn basis_vector(dim: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[i] = Complex64::new(1.0, 0.0);
    v
}

pub fn real_vector(xs: &[f64]) -> CVector {
    CVector::from_iterator(xs.len(), xs.iter().map(|&x| Complex64::new(x, 0.0)))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexJson {
    Real(f64),
    Pair([f64; 2]),
    Obj { re: f64, #[serde(default)] im: f64 },
}

impl From<&ComplexJson> for Complex64 {
    fn from(c: &ComplexJson) -> Self {
        match *c {
            ComplexJson::Real(x) => Complex64::new(x, 0.0),
            ComplexJson::Pair([re, im]) => Complex64::new(re, im),
            ComplexJson::Obj { re, im } => Complex64::new(re, im),
        }
    }
}

#[derive(Deserialize)]
struct StepJson {
    projectors: Vec<Vec<Vec<ComplexJson>>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
    #[serde(default)]
    unitary: Option<Vec<Vec<ComplexJson>>>,
}

#[derive(Deserialize)]
struct SpecJson {
    dim: usize,
    state: Vec<ComplexJson>,
    steps: Vec<StepJson>,
}

fn matrix(dim: usize, rows: &[Vec<ComplexJson>]) -> Result<CMatrix, BridgeError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(BridgeError::InvalidSpec(format!("matrices must be {dim}x{dim}")));
    }
    Ok(CMatrix::from_fn(dim, dim, |i, j| (&rows[i][j]).into()))
}

/// Parses `{ "dim", "state": [...], "steps": [{ "projectors": [...] }] }`.
///
/// Complex numbers may be plain reals, `[re, im]` pairs or `{"re", "im"}` objects.
pub fn parse_spec(text: &str) -> Result<HilbertSpec, BridgeError> {
    let raw: SpecJson = serde_json::from_str(text).map_err(|e| BridgeError::InvalidSpec(e.to_string()))?;
    if raw.state.len() != raw.dim {
        return Err(BridgeError::InvalidSpec("state length differs from dim".into()));
    }
    let state = CVector::from_iterator(raw.dim, raw.state.iter().map(Complex64::from));
    let mut steps = Vec::new();
    for s in &raw.steps {
        let projectors = s.projectors.iter().map(|m| matrix(raw.dim, m)).collect::<Result<Vec<_>, _>>()?;
        let mut step = match &s.labels {
            Some(l) => Step { unitary: None, projectors, labels: l.clone() },
            None => Step::new(projectors),
        };
        if let Some(u) = &s.unitary {
            step = step.with_unitary(matrix(raw.dim, u)?);
        }
        steps.push(step);
    }
    HilbertSpec::new(state, steps)
}
