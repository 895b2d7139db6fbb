use nalgebra::{DVector, Matrix4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;

pub type CMat4 = Matrix4<Complex64>;

pub const UNITARY_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-10;

/// Vertex `pos` of row `layer`; row 0 is the first row to the future of the initial surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub layer: usize,
    pub pos: usize,
}

impl Vertex {
    pub fn new(layer: usize, pos: usize) -> Self {
        Self { layer, pos }
    }

    /// Surface slots (left, right) of the two ingoing links, which the outgoing
    /// left- and right-going links then occupy.
    pub fn slots(self, width: usize) -> (usize, usize) {
        let m = 2 * width;
        if self.layer % 2 == 0 {
            (2 * self.pos, 2 * self.pos + 1)
        } else {
            (2 * self.pos + 1, (2 * self.pos + 2) % m)
        }
    }

    /// The vertices of the previous row whose outgoing links enter this one.
    pub fn predecessors(self, width: usize) -> Vec<Vertex> {
        if self.layer == 0 {
            return Vec::new();
        }
        let prev = self.layer - 1;
        let (a, b) = if self.layer % 2 == 1 {
            (self.pos, (self.pos + 1) % width)
        } else {
            ((self.pos + width - 1) % width, self.pos)
        };
        let mut out = vec![Vertex::new(prev, a)];
        if b != a {
            out.push(Vertex::new(prev, b));
        }
        out
    }
}

/// Row-by-row labelling of the first `steps` vertices.
pub fn row_order(width: usize, steps: usize) -> Vec<Vertex> {
    (0..steps).map(|i| Vertex::new(i / width, i % width)).collect()
}

/// Checks that every vertex follows its causal predecessors and appears once.
pub fn check_natural(width: usize, order: &[Vertex]) -> Result<(), LatticeError> {
    for (i, v) in order.iter().enumerate() {
        if v.pos >= width {
            return Err(LatticeError::BadLabelling(format!("vertex {v:?} outside width {width}")));
        }
        if order[..i].contains(v) {
            return Err(LatticeError::BadLabelling(format!("vertex {v:?} appears twice")));
        }
        for p in v.predecessors(width) {
            if !order[..i].contains(&p) {
                return Err(LatticeError::BadLabelling(format!("vertex {v:?} precedes its cause {p:?}")));
            }
        }
    }
    Ok(())
}

pub mod gates {
    use super::CMat4;
    use num_complex::Complex64;

    pub fn identity() -> CMat4 {
        CMat4::identity()
    }

    /// Exchanges the two link qubits.
    pub fn swap() -> CMat4 {
        let mut m = CMat4::zeros();
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            m[(r, c)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// cos θ · 1 + i sin θ · SWAP.
    pub fn entangler(theta: f64) -> CMat4 {
        identity() * Complex64::new(theta.cos(), 0.0) + swap() * Complex64::new(0.0, theta.sin())
    }
}

pub fn is_unitary(u: &CMat4, tol: f64) -> bool {
    let d = u.adjoint() * u - CMat4::identity();
    d.iter().all(|z| z.norm() <= tol)
}

/// Q factor of a random complex matrix.
pub fn random_unitary(rng: &mut impl Rng) -> CMat4 {
    let m = CMat4::from_fn(|_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    m.qr().q()
}

pub fn random_state(dim: usize, rng: &mut impl Rng) -> DVector<Complex64> {
    let v = DVector::from_fn(dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let n = v.norm();
    v / Complex64::new(n, 0.0)
}

/// Finite stretch of the periodic null lattice with its evolution data.
///
/// Surface slot `s` is bit `s` of a basis index, so the state has dimension 2^(2N).
/// A vertex unitary acts on |left, right⟩ with row/column index 2·left + right.
/// History bit `a − 1` carries the field on link l_a.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeModel {
    width: usize,
    order: Vec<Vertex>,
    unitaries: Vec<CMat4>,
    x: f64,
    state: DVector<Complex64>,
}

impl LatticeModel {
    pub fn new(
        width: usize,
        order: Vec<Vertex>,
        unitaries: Vec<CMat4>,
        x: f64,
        state: DVector<Complex64>,
    ) -> Result<Self, LatticeError> {
        if width == 0 {
            return Err(LatticeError::BadLabelling("width must be at least 1".into()));
        }
        if 2 * width > 16 {
            return Err(LatticeError::TooLarge { what: "surface links", size: 2 * width, cap: 16 });
        }
        check_natural(width, &order)?;
        if unitaries.len() != order.len() {
            return Err(LatticeError::BadLabelling(format!(
                "{} unitaries for {} vertices",
                unitaries.len(),
                order.len()
            )));
        }
        if let Some(i) = unitaries.iter().position(|u| !is_unitary(u, UNITARY_TOL)) {
            return Err(LatticeError::NotUnitary(i));
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(LatticeError::BadParameter(x));
        }
        let expected = 1usize << (2 * width);
        if state.len() != expected {
            return Err(LatticeError::BadState { got: state.len(), expected });
        }
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(LatticeError::NotNormalized(norm));
        }
        Ok(Self { width, order, unitaries, x, state })
    }

    /// Row-order model with the same unitary at every vertex, started in the basis state `basis`.
    pub fn uniform(width: usize, steps: usize, gate: CMat4, x: f64, basis: usize) -> Result<Self, LatticeError> {
        let dim = 1usize << (2 * width);
        if basis >= dim {
            return Err(LatticeError::BadState { got: basis, expected: dim });
        }
        let mut state = DVector::zeros(dim);
        state[basis] = Complex64::new(1.0, 0.0);
        Self::new(width, row_order(width, steps), vec![gate; steps], x, state)
    }

    /// Random vertex unitaries and initial state drawn from a seeded generator.
    pub fn random(width: usize, steps: usize, x: f64, seed: u64) -> Result<Self, LatticeError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unitaries = (0..steps).map(|_| random_unitary(&mut rng)).collect();
        let state = random_state(1usize << (2 * width.min(8)), &mut rng);
        Self::new(width, row_order(width, steps), unitaries, x, state)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn steps(&self) -> usize {
        self.order.len()
    }

    pub fn links(&self) -> usize {
        2 * self.order.len()
    }

    /// Number of field histories on the first 2n links.
    pub fn histories(&self) -> usize {
        1usize << self.links()
    }

    pub fn state_dim(&self) -> usize {
        self.state.len()
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn unitaries(&self) -> &[CMat4] {
        &self.unitaries
    }

    pub fn state(&self) -> &DVector<Complex64> {
        &self.state
    }

    pub fn with_x(&self, x: f64) -> Result<Self, LatticeError> {
        Self::new(self.width, self.order.clone(), self.unitaries.clone(), x, self.state.clone())
    }

    /// The model restricted to its first `k` vertices.
    pub fn truncated(&self, k: usize) -> Result<Self, LatticeError> {
        let k = k.min(self.steps());
        Self::new(self.width, self.order[..k].to_vec(), self.unitaries[..k].to_vec(), self.x, self.state.clone())
    }

    /// Same vertices and unitaries under another natural labelling.
    pub fn relabelled(&self, order: Vec<Vertex>) -> Result<Self, LatticeError> {
        if order.len() != self.order.len() {
            return Err(LatticeError::BadLabelling("relabelling changes the vertex count".into()));
        }
        let mut unitaries = Vec::with_capacity(order.len());
        for v in &order {
            let i = self
                .order
                .iter()
                .position(|w| w == v)
                .ok_or_else(|| LatticeError::BadLabelling(format!("vertex {v:?} not in the model")))?;
            unitaries.push(self.unitaries[i]);
        }
        Self::new(self.width, order, unitaries, self.x, self.state.clone())
    }

    /// The labelling with the first adjacent spacelike pair exchanged, if there is one.
    pub fn spacelike_swap(&self) -> Option<Vec<Vertex>> {
        (1..self.order.len()).find_map(|i| {
            let (a, b) = (self.order[i - 1], self.order[i]);
            if b.predecessors(self.width).contains(&a) {
                return None;
            }
            let mut order = self.order.clone();
            order.swap(i - 1, i);
            Some(order)
        })
    }

    /// Position of each vertex of `self` in the labelling of `other`.
    pub fn label_map(&self, other: &LatticeModel) -> Option<Vec<usize>> {
        self.order.iter().map(|v| other.order.iter().position(|w| w == v)).collect()
    }
}

/// Moves the link bits of each vertex from its position in one labelling to
/// its position `map[i]` in another.
pub fn relabel_history(h: usize, map: &[usize]) -> usize {
    let mut out = 0;
    for (i, &j) in map.iter().enumerate() {
        let pair = h >> (2 * i) & 3;
        out |= pair << (2 * j);
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GateSpec {
    Named(String),
    Entangler { entangler: f64 },
    Matrix(Vec<Vec<[f64; 2]>>),
}

impl GateSpec {
    fn build(&self, rng: &mut ChaCha8Rng) -> Result<CMat4, LatticeError> {
        match self {
            GateSpec::Named(n) => match n.as_str() {
                "identity" => Ok(gates::identity()),
                "swap" => Ok(gates::swap()),
                "random" => Ok(random_unitary(rng)),
                other => Err(LatticeError::Parse(format!("unknown gate {other:?}"))),
            },
            GateSpec::Entangler { entangler } => Ok(gates::entangler(*entangler)),
            GateSpec::Matrix(rows) => {
                if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                    return Err(LatticeError::Parse("a gate matrix must be 4x4".into()));
                }
                Ok(CMat4::from_fn(|r, c| Complex64::new(rows[r][c][0], rows[r][c][1])))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitariesSpec {
    All(GateSpec),
    Each(Vec<GateSpec>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Named(String),
    Basis { basis: usize },
    Real(Vec<f64>),
    Complex(Vec<[f64; 2]>),
}

/// JSON description of a lattice model.
///
/// `unitaries` is one gate for every vertex or a list in labelling order. A gate is
/// `"identity"`, `"swap"`, `"random"`, `{"entangler": θ}` or a 4x4 matrix of `[re, im]`.
/// `state` is `"random"`, `{"basis": i}` or an amplitude list; it defaults to basis state 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeSpec {
    #[serde(rename = "N")]
    pub width: usize,
    pub steps: usize,
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(default = "default_unitaries")]
    pub unitaries: UnitariesSpec,
    #[serde(default)]
    pub state: Option<StateSpec>,
    #[serde(default)]
    pub order: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    pub seed: u64,
}

fn default_unitaries() -> UnitariesSpec {
    UnitariesSpec::All(GateSpec::Named("identity".into()))
}

impl LatticeSpec {
    pub fn from_json(text: &str) -> Result<Self, LatticeError> {
        serde_json::from_str(text).map_err(|e| LatticeError::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<LatticeModel, LatticeError> {
        if self.width == 0 || self.width > 8 {
            return Err(LatticeError::TooLarge { what: "width", size: self.width, cap: 8 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let order = match &self.order {
            Some(o) => o.iter().map(|&[l, p]| Vertex::new(l, p)).collect(),
            None => row_order(self.width, self.steps),
        };
        if order.len() != self.steps {
            return Err(LatticeError::BadLabelling(format!("order lists {} vertices, steps is {}", order.len(), self.steps)));
        }
        let unitaries = match &self.unitaries {
            UnitariesSpec::All(g) => (0..self.steps).map(|_| g.build(&mut rng)).collect::<Result<Vec<_>, _>>()?,
            UnitariesSpec::Each(gs) => gs.iter().map(|g| g.build(&mut rng)).collect::<Result<Vec<_>, _>>()?,
        };
        let dim = 1usize << (2 * self.width);
        let state = match self.state.as_ref().unwrap_or(&StateSpec::Basis { basis: 0 }) {
            StateSpec::Named(n) if n == "random" => random_state(dim, &mut rng),
            StateSpec::Named(n) => return Err(LatticeError::Parse(format!("unknown state {n:?}"))),
            StateSpec::Basis { basis } => {
                if *basis >= dim {
                    return Err(LatticeError::BadState { got: *basis, expected: dim });
                }
                let mut v = DVector::zeros(dim);
                v[*basis] = Complex64::new(1.0, 0.0);
                v
            }
            StateSpec::Real(a) => DVector::from_iterator(a.len(), a.iter().map(|&r| Complex64::new(r, 0.0))),
            StateSpec::Complex(a) => DVector::from_iterator(a.len(), a.iter().map(|&[r, i]| Complex64::new(r, i))),
        };
        LatticeModel::new(self.width, order, unitaries, self.x, state)
    }
}
