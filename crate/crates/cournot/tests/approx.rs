use coevent_engine::{multiplicative_scheme, CoEvent};
use cournot::*;
use measure_core::{ratio, registry, Event};
use num_rational::BigRational;

#[test]
fn coin_pairs_at_three_tenths() {
    let t = registry::coin(&ratio(1, 2), 2).unwrap();
    let r = approx_scheme(&t, &ratio(3, 10)).unwrap();
    assert_eq!(r.len(), 6);
    assert!(r.coevents.iter().all(|c| c.multiplicative_dual().unwrap().len() == 2));
    // brute force: minimal events with μ ≥ 3/10, i.e. not inside one of measure below it
    let mut want = Vec::new();
    for a in 1u64..16 {
        let ok = |e: u64| (e.count_ones() as i64) * 10 >= 12;
        let supersets_ok = (a..16).filter(|s| s & a == a).all(ok);
        let minimal = (0..4).filter(|i| a >> i & 1 == 1).all(|i| {
            let b = a & !(1 << i);
            (b..16).filter(|s| s & b == b).any(|s| !ok(s))
        });
        if supersets_ok && minimal {
            want.push(CoEvent::dual_of(t.space(), Event(a)).unwrap());
        }
    }
    want.sort();
    assert_eq!(r.coevents, want);
}

#[test]
fn tiny_epsilon_recovers_the_exact_scheme() {
    for entry in registry::systems() {
        let t = entry.build();
        if t.len() > 12 {
            continue;
        }
        let min = t
            .space()
            .all_events()
            .filter_map(|a| t.measure(a).unwrap().as_exact().cloned())
            .filter(|m| *m > BigRational::from_integer(0.into()))
            .min();
        let Some(min) = min else { continue };
        let eps = min / BigRational::from_integer(2.into());
        let approx = approx_scheme(&t, &eps).unwrap();
        assert_eq!(approx.coevents, multiplicative_scheme(&t).unwrap().coevents, "{}", entry.name);
    }
}

#[test]
fn example_7_1_keeps_its_coevent() {
    let t = registry::example_7_1();
    let r = approx_scheme(&t, &ratio(1, 10)).unwrap();
    assert_eq!(r.names(), multiplicative_scheme(&t).unwrap().names());
}

#[test]
fn approximate_coevent_checks_preclusion() {
    let t = registry::coin(&ratio(1, 2), 2).unwrap();
    let pair = CoEvent::dual_of(t.space(), Event(0b0011)).unwrap();
    assert!(ApproximateCoEvent::new(&t, pair, ratio(3, 10)).is_ok());
    let single = CoEvent::dual_of(t.space(), Event(0b0001)).unwrap();
    assert!(matches!(
        ApproximateCoEvent::new(&t, single, ratio(3, 10)),
        Err(CournotError::NotApproximatelyPreclusive(_))
    ));
}

#[test]
fn single_partition_counterexample() {
    let eps = ratio(1, 20);
    let w = single_partition_witness(10, &eps).unwrap();
    assert_eq!(w.greedy_support, w.formula_support);
    assert_eq!(w.values, (false, false));
    assert!(w.preclusive && w.primitive);
}

#[test]
fn even_odd_counterexample() {
    let w = even_odd_witness(8, &ratio(1, 20)).unwrap();
    assert_eq!(w.values, [false, true, false, false]);
    assert!(w.classical_on_even && !w.classical_on_odd);
    assert!(w.preclusive && w.primitive);
    assert_eq!(w.dual.len(), 3277);
}

fn registry_index(mask: u32, n: usize) -> u64 {
    // registry labels use bit = 1 for tails
    (!mask & ((1 << n) - 1)) as u64
}

#[test]
fn even_odd_dual_is_in_the_approximate_scheme() {
    let eps = ratio(3, 10);
    let w = even_odd_witness(2, &eps).unwrap();
    let t = registry::coin(&ratio(1, 2), 4).unwrap();
    let bits = w.dual.iter().fold(0u64, |acc, &g| acc | 1 << registry_index(g, 4));
    let phi = CoEvent::dual_of(t.space(), Event(bits)).unwrap();
    assert!(approx_scheme(&t, &eps).unwrap().contains(&phi));
    assert!(!w.classical_on_odd);

    let s = single_partition_witness(4, &eps).unwrap();
    let bits = s.dual.iter().fold(0u64, |acc, &g| acc | 1 << registry_index(g, 4));
    let phi = CoEvent::dual_of(t.space(), Event(bits)).unwrap();
    assert!(approx_scheme(&t, &eps).unwrap().contains(&phi));
}
