use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use measure_core::scalar::{ratio, rational_to_f64};
use measure_core::{HistoriesTheory, SampleSpace};

use crate::error::BridgeError;
use crate::spec::{basis_vector, build_decoherence, ray_projector, CMatrix, CVector, HilbertSpec, Step};

/// Signed slit weights c_i; the slit amplitudes are a_i = √|c_i|.
#[derive(Clone, Debug, PartialEq)]
pub struct SlitCoefficients {
    pub labels: Vec<String>,
    pub c: Vec<BigRational>,
}

impl SlitCoefficients {
    pub fn new(c: Vec<BigRational>) -> Result<Self, BridgeError> {
        let labels = (0..c.len()).map(|i| i.to_string()).collect();
        Self::labelled(labels, c)
    }

    pub fn labelled(labels: Vec<String>, c: Vec<BigRational>) -> Result<Self, BridgeError> {
        if c.len() < 2 {
            return Err(BridgeError::TooFewCoefficients);
        }
        if let Some(i) = c.iter().position(Zero::is_zero) {
            return Err(BridgeError::ZeroCoefficient(i));
        }
        if labels.len() != c.len() {
            return Err(BridgeError::InvalidSpec("one label per coefficient".into()));
        }
        Ok(Self { labels, c })
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn amplitudes(&self) -> Vec<f64> {
        self.c.iter().map(|c| rational_to_f64(&c.abs()).sqrt()).collect()
    }

    pub fn signs(&self) -> Vec<f64> {
        self.c.iter().map(|c| if c.is_negative() { -1.0 } else { 1.0 }).collect()
    }

    fn abs_sum(&self) -> BigRational {
        self.c.iter().fold(BigRational::zero(), |acc, c| acc + c.abs())
    }
}

/// Five 3/8, ten -1/8 and a final 3/8, labelled by the subsets they stand for.
pub fn sixteen_slit_coefficients() -> SlitCoefficients {
    let (labels, c) = measure_core::registry::sixteen_slit_coefficients().into_iter().unzip();
    SlitCoefficients::labelled(labels, c).expect("nonzero coefficients")
}

/// Slits as basis states, with |ψ⟩ ∝ Σ a_i|A_i⟩ and detector |D⟩ ∝ Σ s_i a_i|A_i⟩.
pub fn many_slit_spec(coeffs: &SlitCoefficients) -> Result<HilbertSpec, BridgeError> {
    let m = coeffs.len();
    let n = 1.0 / rational_to_f64(&coeffs.abs_sum()).sqrt();
    let a = coeffs.amplitudes();
    let s = coeffs.signs();
    let psi = CVector::from_iterator(m, a.iter().map(|&x| Complex64::new(n * x, 0.0)));
    let d = CVector::from_iterator(m, a.iter().zip(&s).map(|(&x, &s)| Complex64::new(n * s * x, 0.0)));
    let slit_projectors: Vec<CMatrix> = (0..m).map(|i| ray_projector(&basis_vector(m, i))).collect();
    let pd = ray_projector(&d);
    let pnd = CMatrix::identity(m, m) - &pd;
    let slit_labels: Vec<String> = coeffs.labels.clone();
    let steps = vec![
        Step { unitary: None, projectors: slit_projectors, labels: slit_labels },
        Step::labelled(vec![pd, pnd], &["D", "Dbar"]),
    ];
    HilbertSpec::new(psi.normalize(), steps)
}

/// Floating theory built from the Hilbert-space construction.
///
/// Histories run D_0..D_{m-1} then Dbar_0..Dbar_{m-1}.
pub fn many_slit_theory(coeffs: &SlitCoefficients) -> Result<HistoriesTheory, BridgeError> {
    build_decoherence(&many_slit_spec(coeffs)?)
}

/// Closed form of the many-slit functional in exact arithmetic.
///
/// With N² = 1/Σ|c_i| the detector block is N⁴ c_i c_j and the other block is
/// δ_ij N² |c_i| − N⁴ c_i c_j.
pub fn many_slit_exact(coeffs: &SlitCoefficients) -> Result<HistoriesTheory, BridgeError> {
    let m = coeffs.len();
    let n2 = coeffs.abs_sum().recip();
    let n4 = &n2 * &n2;
    let mut rows = vec![vec![BigRational::zero(); 2 * m]; 2 * m];
    for i in 0..m {
        for j in 0..m {
            let cc = &n4 * &coeffs.c[i] * &coeffs.c[j];
            rows[i][j] = cc.clone();
            rows[m + i][m + j] = if i == j { &n2 * coeffs.c[i].abs() - cc } else { -cc };
        }
    }
    let labels = coeffs
        .labels
        .iter()
        .map(|l| format!("{l}D"))
        .chain(coeffs.labels.iter().map(|l| format!("{l}Dbar")));
    Ok(HistoriesTheory::exact_real(labels, rows)?)
}

/// Rank-one detector-only theory D = c cᵀ.
pub fn detector_theory(coeffs: &SlitCoefficients) -> Result<HistoriesTheory, BridgeError> {
    let rows = measure_core::registry::outer(&coeffs.c);
    let space = SampleSpace::new(coeffs.labels.clone())?;
    Ok(HistoriesTheory::exact_real(space.labels().to_vec(), rows)?)
}

/// Two slits with unit amplitudes and opposite detector phase.
pub fn double_slit_spec() -> HilbertSpec {
    let c = SlitCoefficients::labelled(vec!["A".into(), "B".into()], vec![ratio(1, 1), ratio(-1, 1)]).unwrap();
    many_slit_spec(&c).expect("valid spec")
}

/// Three slits with detector |D⟩ = (|A⟩ − |B⟩ + |C⟩)/√3.
pub fn triple_slit_spec() -> HilbertSpec {
    let c = SlitCoefficients::labelled(
        vec!["A".into(), "B".into(), "C".into()],
        vec![ratio(1, 1), ratio(-1, 1), ratio(1, 1)],
    )
    .unwrap();
    many_slit_spec(&c).expect("valid spec")
}
