use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::LatticeError;
use crate::functionals::{
    coupled_decoherence, environment_branches, environment_decoherence, hamming, hermitian_defect, max_abs_diff,
    pair_value, unitary_branches, unitary_decoherence, collapse_decoherence, CMat, CoupledDecoherence,
    EnvironmentDecoherence, ENVIRONMENT_CAP, PAIR_MATRIX_CAP,
};
use crate::model::{relabel_history, LatticeModel};

/// Largest |D_c − D_qc traced over Ω_q|.
pub fn coarse_quantum_deviation(model: &LatticeModel) -> Result<f64, LatticeError> {
    let dc = collapse_decoherence(model)?;
    let dqc = coupled_decoherence(model)?;
    Ok(max_abs_diff(&dc, &dqc.coarse_over_quantum()))
}

/// Largest |D̃_q − (2X/(1+X²))^d D_q| over all history pairs.
pub fn factor_law_deviation(dqc: &CoupledDecoherence, x: f64) -> f64 {
    let t = dqc.coarse_over_classical();
    let f = 2.0 * x / (1.0 + x * x);
    let dq = dqc.unitary();
    let mut worst: f64 = 0.0;
    for i in 0..dq.nrows() {
        for j in 0..dq.ncols() {
            let expected = dq[(i, j)] * f.powi(hamming(i, j) as i32);
            worst = worst.max((t[(i, j)] - expected).norm());
        }
    }
    worst
}

/// Largest entrywise |D_qe − D_qc|, covering every pair with either side nonzero.
pub fn environment_deviation(dqe: &EnvironmentDecoherence, dqc: &CoupledDecoherence) -> f64 {
    let h = dqc.histories();
    let mut worst: f64 = 0.0;
    for alpha in 0..h {
        for phi in 0..h {
            for phib in 0..h {
                let d = dqe.entry(phi, alpha, phib, alpha) - dqc.entry(phi, alpha, phib, alpha);
                worst = worst.max(d.norm());
            }
        }
    }
    for (&(i, j), v) in dqe.stored() {
        if i / h != j / h {
            worst = worst.max(v.norm());
        }
    }
    worst
}

/// Largest deviation of |Φ, E⟩ from |Φ⟩ ⊗ X^d(Φ,E)/(1+X²)ⁿ |E⟩.
pub fn product_form_deviation(model: &LatticeModel) -> Result<f64, LatticeError> {
    let joint = environment_branches(model)?;
    let field = unitary_branches(model)?;
    let h = model.histories();
    let q = model.state_dim();
    let x = model.x();
    let norm = (1.0 + x * x).powi(model.steps() as i32);
    let mut worst: f64 = 0.0;
    for (idx, v) in joint.iter().enumerate() {
        let (phi, env) = (idx % h, idx / h);
        let w = x.powi(hamming(phi, env) as i32) / norm;
        for (k, z) in v.iter().enumerate() {
            let (qi, ei) = (k % q, k / q);
            let expected = if ei == env { field[phi][qi] * w } else { Default::default() };
            worst = worst.max((z - expected).norm());
        }
    }
    Ok(worst)
}

/// Two-sided additivity: D(Φⁿ, Φ̄ⁿ) equals the sum over the four extensions of each argument.
pub fn additivity_deviation(finer: &CMat, coarser: &CMat) -> f64 {
    let h = coarser.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..h {
        for j in 0..h {
            let mut s = num_complex::Complex64::default();
            for a in 0..4 {
                for b in 0..4 {
                    s += finer[(i | a * h, j | b * h)];
                }
            }
            worst = worst.max((s - coarser[(i, j)]).norm());
        }
    }
    worst
}

/// Largest |D(Y, Z) − D(Y∩Z, Y∩Z)| over `samples` random event pairs.
pub fn level_one_deviation(d: &CMat, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = d.nrows();
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let y: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let z: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let yz: Vec<bool> = y.iter().zip(&z).map(|(a, b)| *a && *b).collect();
        worst = worst.max((pair_value(d, &y, &z) - pair_value(d, &yz, &yz)).norm());
    }
    worst
}

/// Largest change in D_q, D_c and D̃_q when the model is evaluated under `other`'s labelling.
pub fn relabelling_deviation(model: &LatticeModel, other: &LatticeModel) -> Result<f64, LatticeError> {
    let map = model
        .label_map(other)
        .ok_or_else(|| LatticeError::BadLabelling("labellings cover different vertices".into()))?;
    let pairs = [
        (unitary_decoherence(model)?, unitary_decoherence(other)?),
        (collapse_decoherence(model)?, collapse_decoherence(other)?),
        (
            coupled_decoherence(model)?.coarse_over_classical(),
            coupled_decoherence(other)?.coarse_over_classical(),
        ),
    ];
    let mut worst: f64 = 0.0;
    for (a, b) in &pairs {
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                let d = a[(i, j)] - b[(relabel_history(i, &map), relabel_history(j, &map))];
                worst = worst.max(d.norm());
            }
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeReport {
    pub width: usize,
    pub steps: usize,
    pub x: f64,
    pub hermitian: f64,
    pub collapse_trace: f64,
    pub coarse_over_quantum: f64,
    pub factor_law: f64,
    pub level_one: f64,
    /// None when the joint field and environment space is over its cap.
    pub environment: Option<f64>,
    pub product_form: Option<f64>,
    /// None when the model has no adjacent spacelike pair to exchange.
    pub relabelling: Option<f64>,
    pub tolerance: f64,
    pub ok: bool,
}

/// Runs every lemma check on one model.
pub fn verify_lattice(model: &LatticeModel, tolerance: f64) -> Result<LatticeReport, LatticeError> {
    let dq = unitary_decoherence(model)?;
    let dc = collapse_decoherence(model)?;
    let dqc = coupled_decoherence(model)?;
    let hermitian = hermitian_defect(&dq).max(hermitian_defect(&dc));
    let collapse_trace = (dc.trace().re - 1.0).abs();
    let coarse_over_quantum = max_abs_diff(&dc, &dqc.coarse_over_quantum());
    let factor_law = factor_law_deviation(&dqc, model.x());
    let level_one = level_one_deviation(&dc, 32, model.steps() as u64);
    let joint = model.state_dim() << model.links();
    let pairs = model.histories() * model.histories();
    let (environment, product_form) = if joint <= ENVIRONMENT_CAP && pairs <= PAIR_MATRIX_CAP {
        let dqe = environment_decoherence(model)?;
        (Some(environment_deviation(&dqe, &dqc)), Some(product_form_deviation(model)?))
    } else {
        (None, None)
    };
    let relabelling = match model.spacelike_swap() {
        Some(order) => Some(relabelling_deviation(model, &model.relabelled(order)?)?),
        None => None,
    };
    let checks = [hermitian, collapse_trace, coarse_over_quantum, factor_law, level_one];
    let ok = checks.iter().chain(environment.iter()).chain(product_form.iter()).chain(relabelling.iter()).all(|&e| e <= tolerance);
    Ok(LatticeReport {
        width: model.width(),
        steps: model.steps(),
        x: model.x(),
        hermitian,
        collapse_trace,
        coarse_over_quantum,
        factor_law,
        level_one,
        environment,
        product_form,
        relabelling,
        tolerance,
        ok,
    })
}
