use coevent_engine::brute::{self, Rule};
use coevent_engine::*;
use measure_core::{canonical_events, int, Event, HistoriesTheory};
use proptest::prelude::*;

fn gram(n: usize, vecs: &[Vec<i64>]) -> HistoriesTheory {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| int(vecs.iter().map(|v| v[i] * v[j]).sum::<i64>())).collect())
        .collect();
    HistoriesTheory::exact_real((0..n).map(|i| format!("g{i}")), rows).unwrap()
}

fn gram_strategy(lo: usize, hi: usize) -> impl Strategy<Value = HistoriesTheory> {
    (lo..=hi).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..=3).prop_map(move |v| gram(n, &v)))
}

fn classical_strategy(max_n: usize) -> impl Strategy<Value = HistoriesTheory> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0i64..=3, n)
            .prop_map(move |w| HistoriesTheory::classical((0..n).map(|i| format!("g{i}")), w.into_iter().map(int).collect()).unwrap())
    })
}

// Sum rule of order d checked directly on every disjoint (d+1)-tuple.
fn order_rule_holds(phi: &CoEvent, n: usize, d: usize) -> bool {
    let bins = d + 2;
    (0..bins.pow(n as u32)).all(|mut code| {
        let mut parts = vec![Event::EMPTY; d + 1];
        for h in 0..n {
            let b = code % bins;
            code /= bins;
            if b > 0 {
                parts[b - 1] = parts[b - 1] | Event::singleton(h);
            }
        }
        let full = parts.iter().fold(Event::EMPTY, |a, p| a | *p);
        let mut rhs = false;
        for sel in 1usize..(1 << (d + 1)) - 1 {
            let u = (0..=d).filter(|i| sel >> i & 1 == 1).fold(Event::EMPTY, |a, i| a | parts[i]);
            rhs ^= phi.eval(u);
        }
        phi.eval(full) == rhs
    })
}

#[test]
fn generator_algebra() {
    for n in 1..=6 {
        let space = measure_core::SampleSpace::numbered("g", n).unwrap();
        for a in 0..n {
            let ga = CoEvent::classical(&space, a);
            assert_eq!(ga.product(&ga).unwrap(), ga);
            for b in 0..n {
                let gb = CoEvent::classical(&space, b);
                let want = CoEvent::dual_of(&space, Event::singleton(a) | Event::singleton(b)).unwrap();
                assert_eq!(ga.product(&gb).unwrap(), want);
            }
        }
    }
}

#[test]
fn order_rule_matches_degree() {
    for n in 1..=4 {
        let space = measure_core::SampleSpace::numbered("g", n).unwrap();
        let top = CoEvent::dual_of(&space, space.full()).unwrap();
        assert!(order_rule_holds(&top, n, n));
        if n >= 2 {
            assert!(!order_rule_holds(&top, n, n - 1));
        }
    }
    // Every map obeying the sum rule has a polynomial of matching degree.
    for d in 1..=3 {
        for t in brute::rule_maps(3, Rule::Order(d)) {
            let table: Vec<bool> = (0..8).map(|a| t >> a & 1 == 1).collect();
            let phi = CoEvent::from_truth_table(&measure_core::SampleSpace::numbered("g", 3).unwrap(), &table).unwrap();
            assert!(phi.degree() <= d);
        }
        assert_eq!(brute::rule_maps(3, Rule::Order(d)).len(), (1usize << (1..=d).map(|k| [3, 3, 1][k - 1]).sum::<usize>()) - 1);
    }
}

#[test]
fn registry_small_systems_match_oracle() {
    for name in ["example-7.1", "lemma-5.4-toy", "lemma-5.5-toy"] {
        let t = measure_core::registry::by_name(name).unwrap();
        assert_eq!(multiplicative_scheme(&t).unwrap().coevents, brute::multiplicative(&t).unwrap(), "{name}");
        for u in [false, true] {
            assert_eq!(linear_scheme(&t, u).unwrap().coevents, brute::linear(&t, u).unwrap(), "{name}");
            assert_eq!(quadratic_scheme(&t, u).unwrap().coevents, brute::polynomial(&t, 2, u).unwrap(), "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn schemes_match_oracle(t in gram_strategy(1, 4)) {
        prop_assert_eq!(classical_scheme(&t).unwrap().coevents, brute::classical(&t).unwrap());
        prop_assert_eq!(multiplicative_scheme(&t).unwrap().coevents, brute::multiplicative(&t).unwrap());
        for u in [false, true] {
            prop_assert_eq!(linear_scheme(&t, u).unwrap().coevents, brute::linear(&t, u).unwrap());
            prop_assert_eq!(quadratic_scheme(&t, u).unwrap().coevents, brute::polynomial(&t, 2, u).unwrap());
        }
    }

    #[test]
    fn cubic_matches_oracle(t in gram_strategy(1, 3)) {
        for u in [false, true] {
            prop_assert_eq!(polynomial_scheme(&t, 3, u).unwrap().coevents, brute::polynomial(&t, 3, u).unwrap());
        }
    }

    #[test]
    fn weak_emergent_classicality(t in classical_strategy(5)) {
        let c = classical_scheme(&t).unwrap().coevents;
        prop_assert_eq!(&linear_scheme(&t, false).unwrap().coevents, &c);
        prop_assert_eq!(&linear_scheme(&t, true).unwrap().coevents, &c);
        prop_assert_eq!(&quadratic_scheme(&t, false).unwrap().coevents, &c);
        prop_assert_eq!(&quadratic_scheme(&t, true).unwrap().coevents, &c);
        prop_assert_eq!(&polynomial_scheme(&t, 3, false).unwrap().coevents, &c);
        prop_assert_eq!(&multiplicative_scheme(&t).unwrap().coevents, &c);
    }

    #[test]
    fn scheme_rules_hold(t in gram_strategy(1, 5), a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (Event(a) * t.full(), Event(b) * t.full());
        for phi in linear_scheme(&t, false).unwrap().coevents {
            prop_assert_eq!(phi.eval(a + b), phi.eval(a) ^ phi.eval(b));
            prop_assert!(phi.is_preclusive(&t).unwrap());
        }
        for phi in multiplicative_scheme(&t).unwrap().coevents {
            prop_assert_eq!(phi.eval(a * b), phi.eval(a) && phi.eval(b));
            prop_assert!(phi.is_preclusive(&t).unwrap());
        }
        for phi in quadratic_scheme(&t, false).unwrap().coevents {
            prop_assert!(phi.degree() <= 2 && phi.is_preclusive(&t).unwrap());
        }
    }

    #[test]
    fn multiplicative_nonempty(t in gram_strategy(1, 5)) {
        let m = multiplicative_scheme(&t).unwrap();
        let ns = NullStructure::of(&t).unwrap();
        let any_non_negligible = canonical_events(t.len()).any(|e| !ns.is_negligible(e));
        prop_assert_eq!(!m.is_empty(), any_non_negligible);
        if !t.is_null(t.full()) {
            prop_assert!(!m.is_empty());
        }
    }

    #[test]
    fn linear_unital_obstruction(t in gram_strategy(1, 6)) {
        let nulls = t.enumerate_null_sets().unwrap();
        let n = t.len();
        // direct search: is the all-ones vector a sum of null indicators?
        let mut span = std::collections::HashSet::new();
        span.insert(0u64);
        for z in &nulls {
            let add: Vec<u64> = span.iter().map(|s| s ^ z.bits()).collect();
            span.extend(add);
        }
        let covered = span.contains(&((1u64 << n) - 1));
        prop_assert_eq!(linear_scheme(&t, true).unwrap().is_empty(), covered);
    }

    #[test]
    fn witness_is_quadratic_and_preclusive(t in gram_strategy(1, 4)) {
        if t.is_null(t.full()) && t.enumerate_null_sets().unwrap().len() == (1 << t.len()) - 1 {
            prop_assert!(quadratic_witness(&t).is_err());
        } else {
            let w = quadratic_witness(&t).unwrap();
            prop_assert!(w.is_preclusive(&t).unwrap());
            prop_assert!(order_rule_holds(&w, t.len(), 2));
        }
    }
}
