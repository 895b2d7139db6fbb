use collapse_lattice::functionals::{
    apply_gate, collapse_branches, hermitian_defect, max_abs_diff, pair_value, CMat, COUPLED_CAP,
};
use collapse_lattice::model::{check_natural, is_unitary, relabel_history};
use collapse_lattice::verify::{
    additivity_deviation, environment_deviation, factor_law_deviation, level_one_deviation, product_form_deviation,
    relabelling_deviation,
};
use collapse_lattice::*;
use nalgebra::DVector;
use num_complex::Complex64;

const TOL: f64 = 1e-10;

fn basis_dq(width: usize, steps: usize, gate: nalgebra::Matrix4<Complex64>, basis: usize) -> CMat {
    let m = LatticeModel::uniform(width, steps, gate, 0.5, basis).unwrap();
    unitary_decoherence(&m).unwrap()
}

fn indicator(h: usize, at: usize) -> CMat {
    let mut d = CMat::zeros(h, h);
    d[(at, at)] = Complex64::new(1.0, 0.0);
    d
}

#[test]
fn identity_eigenstate_picks_one_history() {
    // slot 1 carries 1, so l1 = 0 and l2 = 1
    let d = basis_dq(1, 1, gates::identity(), 0b10);
    assert!(max_abs_diff(&d, &indicator(4, 0b10)) < 1e-14);
}

#[test]
fn swap_moves_the_excitation() {
    let d = basis_dq(1, 1, gates::swap(), 0b01);
    assert!(max_abs_diff(&d, &indicator(4, 0b10)) < 1e-14);
    // second row at N = 1 acts on slots (1, 0), so the excitation moves to slot 0 = l4
    let d = basis_dq(1, 2, gates::swap(), 0b01);
    assert!(max_abs_diff(&d, &indicator(16, 0b10 | 0b10 << 2)) < 1e-14);
}

/// Heisenberg-picture class operators built from full surface matrices.
fn heisenberg_dq(model: &LatticeModel) -> CMat {
    let dim = model.state_dim();
    let width = model.width();
    let evolve = |k: usize| -> CMat {
        let mut u = CMat::identity(dim, dim);
        for (v, r) in model.order()[..k].iter().zip(model.unitaries()) {
            let (l, rr) = v.slots(width);
            for col in 0..dim {
                let mut c = DVector::from_column_slice(u.column(col).as_slice());
                apply_gate(&mut c, l, rr, r);
                u.set_column(col, &c);
            }
        }
        u
    };
    let proj = |slot: usize, value: usize| -> CMat {
        CMat::from_fn(dim, dim, |i, j| {
            if i == j && i >> slot & 1 == value {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    };
    let h = model.histories();
    let mut amps = Vec::new();
    for phi in 0..h {
        let mut c = CMat::identity(dim, dim);
        for (i, v) in model.order().iter().enumerate() {
            let u = evolve(i + 1);
            let (l, r) = v.slots(width);
            let pl = u.adjoint() * proj(l, phi >> (2 * i) & 1) * &u;
            let pr = u.adjoint() * proj(r, phi >> (2 * i + 1) & 1) * &u;
            c = pr * pl * c;
        }
        amps.push(c * model.state());
    }
    CMat::from_fn(h, h, |i, j| amps[i].dotc(&amps[j]))
}

#[test]
fn unitary_functional_matches_heisenberg_class_operators() {
    for (w, n, seed) in [(1, 2, 3), (2, 2, 4), (2, 3, 5)] {
        let m = LatticeModel::random(w, n, 0.3, seed).unwrap();
        let d = unitary_decoherence(&m).unwrap();
        assert!(max_abs_diff(&d, &heisenberg_dq(&m)) < TOL);
        assert!(hermitian_defect(&d) < 1e-14);
    }
}

#[test]
fn unitary_functional_is_additive() {
    for (w, n) in [(1, 2), (2, 3)] {
        let m = LatticeModel::random(w, n, 0.4, 11).unwrap();
        let fine = unitary_decoherence(&m).unwrap();
        let coarse = unitary_decoherence(&m.truncated(n - 1).unwrap()).unwrap();
        assert!(additivity_deviation(&fine, &coarse) < 1e-12);
        let fine = collapse_decoherence(&m).unwrap();
        let coarse = collapse_decoherence(&m.truncated(n - 1).unwrap()).unwrap();
        assert!(additivity_deviation(&fine, &coarse) < 1e-12);
    }
}

#[test]
fn projective_collapse_at_zero() {
    let m = LatticeModel::random(2, 2, 0.0, 7).unwrap();
    let dq = unitary_decoherence(&m).unwrap();
    let dc = collapse_decoherence(&m).unwrap();
    for i in 0..m.histories() {
        assert!((dq[(i, i)] - dc[(i, i)]).norm() < 1e-12);
    }
}

#[test]
fn uniform_collapse_at_one() {
    let m = LatticeModel::random(2, 3, 1.0, 8).unwrap();
    let dc = collapse_decoherence(&m).unwrap();
    let p = 0.25f64.powi(3);
    for i in 0..m.histories() {
        assert!((dc[(i, i)].re - p).abs() < 1e-12);
    }
}

#[test]
fn collapse_diagonal_sums_to_one() {
    let m = LatticeModel::uniform(2, 3, gates::entangler(0.4), 0.6, 5).unwrap();
    let dc = collapse_decoherence(&m).unwrap();
    assert!((dc.trace().re - 1.0).abs() < 1e-12);
    assert!(dc.diagonal().iter().all(|z| z.re >= 0.0 && z.im.abs() < 1e-14));
    assert!(collapse_branches(&m).unwrap().len() == 64);
}

#[test]
fn collapse_functional_is_level_one() {
    let m = LatticeModel::random(2, 3, 0.3, 9).unwrap();
    let dc = collapse_decoherence(&m).unwrap();
    assert!(level_one_deviation(&dc, 50, 1) < 1e-12);
    // links overwritten by the third vertex interfere in the unitary functional
    let dq = unitary_decoherence(&m).unwrap();
    assert!(level_one_deviation(&dq, 50, 1) > 1e-3);
}

#[test]
fn coupled_lemmas_on_the_grid() {
    let gates = [gates::identity(), gates::swap(), gates::entangler(0.7)];
    for w in [1, 2] {
        for n in [1, 2, 3] {
            for x in [0.0, 0.3, 0.7, 1.0] {
                let random = LatticeModel::random(w, n, x, (w * 10 + n) as u64).unwrap();
                let fixed = LatticeModel::uniform(w, n, gates[n - 1], x, 1).unwrap();
                for m in [random, fixed] {
                    let dc = collapse_decoherence(&m).unwrap();
                    let dqc = coupled_decoherence(&m).unwrap();
                    assert!(max_abs_diff(&dc, &dqc.coarse_over_quantum()) < TOL, "N={w} n={n} X={x}");
                    assert!(factor_law_deviation(&dqc, x) < TOL, "N={w} n={n} X={x}");
                }
            }
        }
    }
}

#[test]
fn factor_is_one_at_x_one() {
    let m = LatticeModel::random(2, 2, 1.0, 2).unwrap();
    let dqc = coupled_decoherence(&m).unwrap();
    assert!(max_abs_diff(&dqc.coarse_over_classical(), dqc.unitary()) < 1e-12);
}

#[test]
fn coupled_matrix_is_hermitian_with_nonnegative_diagonal() {
    let m = LatticeModel::random(1, 2, 0.3, 4).unwrap();
    let d = coupled_decoherence(&m).unwrap().to_matrix().unwrap();
    assert_eq!(d.nrows(), 256);
    assert!(hermitian_defect(&d) < 1e-14);
    assert!(d.diagonal().iter().all(|z| z.re >= -1e-15));
}

#[test]
fn environment_reproduces_coupled() {
    let m = LatticeModel::random(1, 1, 0.3, 21).unwrap();
    let dqe = environment_decoherence(&m).unwrap();
    let dqc = coupled_decoherence(&m).unwrap();
    assert!(environment_deviation(&dqe, &dqc) <= TOL);
    assert!(max_abs_diff(&dqe.to_matrix().unwrap(), &dqc.to_matrix().unwrap()) <= TOL);
    assert!(product_form_deviation(&m).unwrap() <= TOL);
    for (w, n) in [(1, 2), (1, 3), (2, 1), (2, 2), (2, 3)] {
        for x in [0.0, 0.3, 0.7, 1.0] {
            let m = LatticeModel::random(w, n, x, 5).unwrap();
            let dqe = environment_decoherence(&m).unwrap();
            assert!(environment_deviation(&dqe, &coupled_decoherence(&m).unwrap()) <= TOL, "N={w} n={n} X={x}");
        }
    }
}

#[test]
fn environment_records_field_at_zero() {
    let m = LatticeModel::random(1, 2, 0.0, 6).unwrap();
    let dqe = environment_decoherence(&m).unwrap();
    let h = m.histories();
    for (&(i, j), v) in dqe.stored() {
        if v.norm() > 1e-14 {
            assert_eq!(i % h, i / h);
            assert_eq!(j % h, j / h);
        }
    }
}

#[test]
fn environment_cap_is_enforced() {
    let m = LatticeModel::random(2, 4, 0.3, 1).unwrap();
    assert!(matches!(environment_decoherence(&m), Err(LatticeError::TooLarge { .. })));
    let m = LatticeModel::random(2, 5, 0.3, 1).unwrap();
    assert!(m.histories() > COUPLED_CAP);
    assert!(matches!(coupled_decoherence(&m), Err(LatticeError::TooLarge { .. })));
}

#[test]
fn spacelike_reordering_changes_nothing() {
    let m = LatticeModel::random(2, 3, 0.3, 12).unwrap();
    let order = m.spacelike_swap().unwrap();
    assert_eq!(order[..2], [Vertex::new(0, 1), Vertex::new(0, 0)]);
    let other = m.relabelled(order).unwrap();
    assert!(relabelling_deviation(&m, &other).unwrap() < TOL);
    // the map genuinely permutes history bits
    let map = m.label_map(&other).unwrap();
    assert_eq!(relabel_history(0b01, &map), 0b0100);
}

#[test]
fn causal_order_is_enforced() {
    assert!(check_natural(2, &[Vertex::new(0, 0), Vertex::new(1, 0)]).is_err());
    assert!(check_natural(2, &[Vertex::new(0, 0), Vertex::new(0, 1), Vertex::new(1, 0)]).is_ok());
    assert!(check_natural(2, &[Vertex::new(0, 1), Vertex::new(0, 1)]).is_err());
    assert_eq!(Vertex::new(2, 0).predecessors(2), vec![Vertex::new(1, 1), Vertex::new(1, 0)]);
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(matches!(
        LatticeModel::uniform(1, 1, gates::identity(), 1.5, 0),
        Err(LatticeError::BadParameter(_))
    ));
    let mut g = gates::identity();
    g[(0, 0)] = Complex64::new(2.0, 0.0);
    assert!(matches!(LatticeModel::uniform(1, 1, g, 0.5, 0), Err(LatticeError::NotUnitary(0))));
    let m = LatticeModel::uniform(1, 1, gates::identity(), 0.5, 0).unwrap();
    let state = DVector::from_element(4, Complex64::new(1.0, 0.0));
    assert!(matches!(
        LatticeModel::new(1, m.order().to_vec(), m.unitaries().to_vec(), 0.5, state),
        Err(LatticeError::NotNormalized(_))
    ));
}

#[test]
fn gates_are_unitary() {
    for g in [gates::identity(), gates::swap(), gates::entangler(0.3), gates::entangler(2.0)] {
        assert!(is_unitary(&g, 1e-14));
    }
    assert!(is_unitary(&collapse_lattice::functionals::partial_measurement(0.3), 1e-14));
}

#[test]
fn spec_json_builds_a_model() {
    let spec = LatticeSpec::from_json(
        r#"{"N": 2, "steps": 3, "X": 0.3, "unitaries": ["swap", {"entangler": 0.5}, "random"], "state": "random", "seed": 4}"#,
    )
    .unwrap();
    let m = spec.build().unwrap();
    assert_eq!((m.width(), m.steps(), m.histories()), (2, 3, 64));
    assert!(verify_lattice(&m, TOL).unwrap().ok);

    let spec = LatticeSpec::from_json(r#"{"N": 1, "steps": 1, "X": 0.0, "state": {"basis": 2}}"#).unwrap();
    let d = unitary_decoherence(&spec.build().unwrap()).unwrap();
    assert!(max_abs_diff(&d, &indicator(4, 2)) < 1e-14);

    let bad = LatticeSpec::from_json(r#"{"N": 1, "steps": 1, "X": 0.2, "unitaries": "rotate"}"#).unwrap();
    assert!(matches!(bad.build(), Err(LatticeError::Parse(_))));
    let reals = LatticeSpec::from_json(r#"{"N": 1, "steps": 1, "X": 0.2, "state": [0.6, 0, 0, 0.8]}"#).unwrap();
    assert!(reals.build().is_ok());
}

#[test]
fn pair_value_sums_entries() {
    let d = CMat::from_fn(3, 3, |i, j| Complex64::new((i * 3 + j) as f64, 0.0));
    let v = pair_value(&d, &[true, false, true], &[false, true, false]);
    assert_eq!(v.re, 1.0 + 7.0);
}
