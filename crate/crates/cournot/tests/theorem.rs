use coevent_engine::{brute, CoEvent};
use cournot::theorem::{all_multiplicative, disjoint_triples};
use cournot::*;
use measure_core::{ratio, registry, Event, HistoriesTheory, SampleSpace};
use num_rational::BigRational;

fn space(n: usize) -> SampleSpace {
    SampleSpace::numbered("g", n).unwrap()
}

#[test]
fn r_cases() {
    let s = space(4);
    let phi = CoEvent::dual_of(&s, Event(0b0111)).unwrap();
    // dual spread over three parts but no two
    assert_eq!(r_functional(&phi, Event(0b0001), Event(0b0010), Event(0b0100)).unwrap(), 1);
    // dual inside A
    assert_eq!(r_functional(&phi, Event(0b0111), Event(0b1000), Event(0)).unwrap(), 0);
    assert!(matches!(r_functional(&phi, Event(0b0011), Event(0b0010), Event(0)), Err(CournotError::NotDisjoint)));
}

#[test]
fn multiplicative_r_is_binary_up_to_four() {
    for n in 1..=4 {
        let all = all_multiplicative(&space(n));
        let s = triple_summary(&all).unwrap();
        assert_eq!(s.triples, 4usize.pow(n as u32));
        assert_eq!((s.r_out_of_range, s.parity_mismatches), (0, 0), "n = {n}");
    }
}

#[test]
fn q_vanishes_exactly_on_quadratic_maps() {
    let n = 3;
    let s = space(n);
    for table in (2u64..1 << (1 << n)).step_by(2) {
        let t: Vec<bool> = (0..1 << n).map(|i| table >> i & 1 == 1).collect();
        let phi = CoEvent::from_truth_table(&s, &t).unwrap();
        let q_zero = disjoint_triples(n).all(|(a, b, c)| !q_functional(&phi, a, b, c).unwrap());
        assert_eq!(q_zero, phi.degree() <= 2, "{phi}");
    }
}

#[test]
fn general_maps_can_leave_zero_one() {
    let s = space(3);
    let phi = CoEvent::linear(&s, Event(0b111)).unwrap();
    let r = r_functional(&phi, Event(1), Event(2), Event(4)).unwrap();
    assert_eq!(r, 1 - 0 - 0 - 0 + 1 + 1 + 1);
}

#[test]
fn constraint_single_history() {
    let t = HistoriesTheory::classical(["g"], vec![ratio(1, 1)]).unwrap();
    let phi = CoEvent::classical(t.space(), 0);
    assert!(check_coevent_probability_constraint(&t, &[(phi, ratio(1, 1))]).unwrap());
}

#[test]
fn constraint_classical_coin() {
    let p = ratio(1, 3);
    let t = registry::coin(&p, 1).unwrap();
    let w = vec![
        (CoEvent::classical(t.space(), 0), p.clone()),
        (CoEvent::classical(t.space(), 1), ratio(2, 3)),
    ];
    assert!(check_coevent_probability_constraint(&t, &w).unwrap());
    let swapped = vec![(w[0].0.clone(), ratio(2, 3)), (w[1].0.clone(), p)];
    assert!(!check_coevent_probability_constraint(&t, &swapped).unwrap());
}

#[test]
fn bad_weights_are_rejected() {
    let t = registry::coin(&ratio(1, 2), 1).unwrap();
    let phi = CoEvent::classical(t.space(), 0);
    assert!(matches!(
        check_coevent_probability_constraint(&t, &[(phi.clone(), ratio(1, 2))]),
        Err(CournotError::BadWeights(_))
    ));
    assert!(matches!(
        check_coevent_probability_constraint(&t, &[(phi.clone(), ratio(3, 2)), (phi, ratio(-1, 2))]),
        Err(CournotError::BadWeights(_))
    ));
}

/// μ(A) = Σ w_S [S ⊆ A]: the measure a weighted family of dual maps would produce.
fn mixture(n: usize, parts: &[(u64, BigRational)]) -> HistoriesTheory {
    // D(x, x) = w for singleton S; D(x, y) = D(y, x) = w/2 for S = {x, y}
    let mut d = vec![vec![BigRational::from_integer(0.into()); n]; n];
    for (s, w) in parts {
        let idx: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
        match idx.as_slice() {
            [x] => d[*x][*x] += w.clone(),
            [x, y] => {
                d[*x][*y] += w.clone() / BigRational::from_integer(2.into());
                d[*y][*x] += w.clone() / BigRational::from_integer(2.into());
            }
            _ => panic!("only degrees one and two"),
        }
    }
    HistoriesTheory::exact_real((0..n).map(|i| format!("g{i}")), d).unwrap()
}

fn solvable_systems() -> Vec<HistoriesTheory> {
    vec![
        registry::coin(&ratio(1, 2), 1).unwrap(),
        HistoriesTheory::classical(["a", "b", "c"], vec![ratio(1, 6), ratio(1, 3), ratio(1, 2)]).unwrap(),
        mixture(3, &[(0b001, ratio(1, 2)), (0b110, ratio(1, 2))]),
        mixture(3, &[(0b011, ratio(1, 3)), (0b110, ratio(1, 3)), (0b101, ratio(1, 3))]),
        mixture(2, &[(0b11, ratio(1, 1))]),
    ]
}

#[test]
fn feasible_weights_avoid_non_quadratic_coevents() {
    for t in solvable_systems() {
        let support = multiplicative_weight_support(&t).unwrap();
        assert!(support.vertices > 0, "system should be solvable");
        assert!(support.non_quadratic_with_mass.is_empty(), "{:?}", support.non_quadratic_with_mass);
    }
}

#[test]
fn vertices_satisfy_the_constraint() {
    for t in solvable_systems() {
        let co = all_multiplicative(t.space());
        for w in feasible_vertices(&t, &co).unwrap() {
            let weights: Vec<_> = co.iter().cloned().zip(w).collect();
            assert!(check_coevent_probability_constraint(&t, &weights).unwrap());
        }
    }
}

#[test]
fn mass_on_the_cubic_coevent_fails() {
    let t = mixture(3, &[(0b001, ratio(1, 2)), (0b110, ratio(1, 2))]);
    let cubic = CoEvent::dual_of(t.space(), Event(0b111)).unwrap();
    let co = all_multiplicative(t.space());
    for w in feasible_vertices(&t, &co).unwrap() {
        for tilt in [ratio(1, 10), ratio(1, 2), ratio(1, 1)] {
            let keep = BigRational::from_integer(1.into()) - tilt.clone();
            let mut weights: Vec<_> = co.iter().cloned().zip(w.iter().map(|x| x * &keep)).collect();
            weights.push((cubic.clone(), tilt));
            assert!(!check_coevent_probability_constraint(&t, &weights).unwrap());
        }
    }
}

#[test]
fn multiplicative_list_matches_brute_rules() {
    for n in 1..=3 {
        let s = space(n);
        let t = HistoriesTheory::classical(s.labels().to_vec(), vec![ratio(1, n as i64); n]).unwrap();
        let mut brute_all: Vec<u64> = brute::rule_maps(n, brute::Rule::Multiplicative);
        brute_all.retain(|&m| m != 0);
        assert_eq!(all_multiplicative(t.space()).len(), brute_all.len());
    }
}
