use coevent_engine::*;
use measure_core::{registry, HistoriesTheory, ratio};

fn names(r: &SchemeResult) -> Vec<String> {
    r.names()
}

fn co(t: &HistoriesTheory, text: &str) -> CoEvent {
    CoEvent::parse(t.space(), text).unwrap()
}

#[test]
fn evaluation_examples() {
    let c = registry::coin(&ratio(1, 2), 1).unwrap();
    let s = c.space();
    let h = s.event_of(&["h"]).unwrap();
    assert!(co(&c, "h*").eval(c.full()));
    assert!(!co(&c, "h*.t*").eval(h));
    assert!(!co(&c, "h* + t*").eval(c.full()));
    assert!(co(&c, "t*").evaluate(measure_core::Event(4)).is_err());
}

#[test]
fn text_form_round_trips() {
    let t = registry::triple_slit();
    for text in ["AD*.CD* + BD*", "ADbar*", "AD* + BD* + CD*"] {
        let phi = co(&t, text);
        assert_eq!(CoEvent::parse(t.space(), &phi.to_string()).unwrap(), phi);
    }
    assert_eq!(co(&t, "BD* + AD*.CD*").to_string(), "BD* + AD*.CD*");
    assert!(matches!(CoEvent::parse(t.space(), "AD* + AD*"), Err(EngineError::ZeroMap)));
    assert!(CoEvent::parse(t.space(), "XY*").is_err());
}

#[test]
fn preclusion_on_double_slit() {
    let t = registry::double_slit();
    assert!(!is_preclusive(&t, &co(&t, "AD*")).unwrap());
    assert!(is_preclusive(&t, &co(&t, "ADbar*")).unwrap());
    assert!(is_preclusive(&t, &co(&t, "AD*.BD*.ADbar*.BDbar*")).unwrap());
}

#[test]
fn classical_schemes() {
    let c = registry::coin(&ratio(1, 3), 1).unwrap();
    assert_eq!(names(&classical_scheme(&c).unwrap()), ["h*", "t*"]);
    let t = registry::double_slit();
    assert_eq!(names(&classical_scheme(&t).unwrap()), ["ADbar*", "BDbar*"]);
    // every singleton lies in a null pair
    assert!(classical_scheme(&registry::lemma_5_5_toy()).unwrap().is_empty());
}

#[test]
fn linear_double_and_triple() {
    let t = registry::double_slit();
    let l = linear_scheme(&t, false).unwrap();
    assert_eq!(l.coevents.iter().map(|c| c.describe()).collect::<Vec<_>>(), ["ADbar*", "BDbar*", "{AD,BD}⊕"]);
    assert_eq!(names(&linear_scheme(&t, true).unwrap()), ["ADbar*", "BDbar*"]);

    let t = registry::triple_slit();
    let lu = linear_scheme(&t, true).unwrap();
    assert_eq!(names(&lu), ["ADbar*", "BDbar*", "CDbar*", "AD* + BD* + CD*"]);
    assert_eq!(lu, SchemeResult { scheme: Scheme::Linear { unital: true }, ..linear_scheme(&t, false).unwrap() });
}

#[test]
fn linear_unital_obstruction() {
    assert!(linear_scheme(&registry::lemma_5_5_toy(), true).unwrap().is_empty());
    let four = registry::four_slit();
    let lu = linear_scheme(&four, true).unwrap();
    assert_eq!(names(&lu), ["D0bar*", "D1bar*", "D2bar*", "D3bar*"]);
}

#[test]
fn four_slit_never_detects() {
    let t = registry::four_slit();
    let d = t.space().event_of(&["D0", "D1", "D2", "D3"]).unwrap();
    for phi in linear_scheme(&t, false).unwrap().coevents {
        assert!(!phi.eval(d), "{phi}");
    }
}

#[test]
fn four_slit_quadratic() {
    let t = registry::four_slit();
    let qu = quadratic_scheme(&t, true).unwrap();
    for pair in ["D1*.D2*", "D1*.D3*", "D2*.D3*"] {
        assert!(qu.contains(&co(&t, pair)), "{pair} missing from {:?}", names(&qu));
    }
    for i in 0..4 {
        assert!(qu.contains(&co(&t, &format!("D{i}bar*"))));
    }
    let brute_t = qu.clone();
    assert!(brute_t.coevents.iter().all(|c| c.is_unital() && c.is_preclusive(&t).unwrap()));
}

#[test]
fn classical_coin_quadratic_is_classical() {
    let c = registry::coin(&ratio(1, 2), 1).unwrap();
    assert_eq!(names(&quadratic_scheme(&c, false).unwrap()), ["h*", "t*"]);
}

#[test]
fn multiplicative_examples() {
    assert_eq!(names(&multiplicative_scheme(&registry::double_slit()).unwrap()), ["ADbar*", "BDbar*"]);
    assert_eq!(
        names(&multiplicative_scheme(&registry::triple_slit()).unwrap()),
        ["ADbar*", "BDbar*", "CDbar*", "AD*.CD*"]
    );
    let ex = registry::example_7_1();
    assert_eq!(names(&multiplicative_scheme(&ex).unwrap()), ["b2*"]);
    let ab = measure_core::Partition::parse(ex.space(), "A=a1,a2|B=b1,b2").unwrap();
    let coarse = ex.coarse_grain(&ab).unwrap();
    assert_eq!(names(&multiplicative_scheme(&coarse).unwrap()), ["A*", "B*"]);
}

#[test]
fn sixteen_slit_has_no_unital_quadratic() {
    let t = registry::sixteen_slit();
    assert!(!has_unital_preclusive(&t, 2).unwrap());
    assert!(matches!(quadratic_scheme(&t, true), Err(EngineError::SpaceTooLarge { .. })));
}

#[test]
fn polynomial_levels() {
    let t = registry::triple_slit();
    assert_eq!(polynomial_scheme(&t, 1, true).unwrap().coevents, linear_scheme(&t, true).unwrap().coevents);
    assert_eq!(polynomial_scheme(&t, 2, false).unwrap().coevents, quadratic_scheme(&t, false).unwrap().coevents);
    assert!(matches!(polynomial_scheme(&t, 0, false), Err(EngineError::BadDegree)));
}

#[test]
fn full_product_is_preclusive_and_top_degree() {
    for entry in registry::systems().iter().filter(|e| e.name != "sixteen-slit") {
        let t = entry.build();
        let all = CoEvent::dual_of(t.space(), t.full()).unwrap();
        assert!(all.is_preclusive(&t).unwrap());
        assert!(all.is_unital());
        assert!(all.obeys_order(t.len()) && !all.obeys_order(t.len() - 1));
    }
}

#[test]
fn witnesses() {
    let t = registry::double_slit();
    let w = quadratic_witness(&t).unwrap();
    assert!(w.is_preclusive(&t).unwrap());
    assert!(w.degree() <= 2);
    assert!(!w.eval(t.space().event_of(&["AD", "BD"]).unwrap()));

    let one = HistoriesTheory::classical(["g"], vec![ratio(1, 1)]).unwrap();
    assert_eq!(quadratic_witness(&one).unwrap().to_string(), "g*");

    let toy = registry::lemma_5_4_toy();
    let w = quadratic_witness(&toy).unwrap();
    for z in [["a0", "a1"].as_slice(), &["a0", "a2"], &["a1", "a2", "a3"]] {
        assert!(!w.eval(toy.space().event_of(z).unwrap()));
    }
}

#[test]
fn scheme_names_round_trip() {
    for name in ["classical", "linear", "linear-unital", "quadratic", "quadratic-unital", "poly:3", "poly:4-unital", "multiplicative", "approx:1/100"] {
        assert_eq!(Scheme::parse(name).unwrap().to_string(), name);
    }
    assert!(Scheme::parse("multiplicative-unital").is_err());
    assert_eq!(Scheme::parse("poly:0"), Err(EngineError::BadDegree));
    assert!(Scheme::parse("ideal").is_err());
    let t = measure_core::registry::double_slit();
    assert!(run_scheme(&t, &Scheme::parse("approx:1/10").unwrap()).is_err());
    assert_eq!(run_scheme(&t, &Scheme::Multiplicative).unwrap(), multiplicative_scheme(&t).unwrap());
}
