use coevent_engine::{CoEvent, Scheme};
use measure_core::{registry, Partition};
use scheme_analysis::*;

fn part(t: &measure_core::HistoriesTheory, text: &str) -> Partition {
    Partition::parse(t.space(), text).unwrap()
}

#[test]
fn triple_slit_classicality() {
    let t = registry::triple_slit();
    let phi = CoEvent::parse(t.space(), "AD*.CD*").unwrap();
    let detector = registry::by_name("triple-slit").unwrap();
    assert_eq!(detector.len(), 6);
    assert!(is_classical_on(&phi, &part(&t, "D=AD,BD,CD|Dbar=ADbar,BDbar,CDbar")));
    assert!(!is_classical_on(&phi, &part(&t, "A=AD,ADbar|B=BD,BDbar|C=CD,CDbar")));
}

#[test]
fn classical_coevents_restrict_classically() {
    for entry in registry::systems() {
        let t = entry.build();
        if t.len() > 10 {
            continue;
        }
        for (name, _) in entry.partitions {
            let p = entry.partition(&t, name).unwrap();
            for g in 0..t.len() {
                assert!(is_classical_on(&CoEvent::classical(t.space(), g), &p), "{} {name}", entry.name);
            }
        }
        let finest = Partition::finest(t.space());
        assert!(is_classical_on(&CoEvent::classical(t.space(), 0), &finest));
    }
}

#[test]
fn triple_slit_truth_tables() {
    let t = registry::triple_slit();
    let slits = part(&t, "A=AD,ADbar|B=BD,BDbar|C=CD,CDbar");
    let phi = CoEvent::parse(t.space(), "AD*.CD*").unwrap();
    let table = anhomomorphism_report(&t, &phi, &slits).unwrap();
    assert_eq!(table.rows[0].event, "{}");
    assert!(!table.rows[0].value);
    for s in ["{A}", "{B}", "{C}", "{A,B}", "{B,C}"] {
        assert_eq!(table.value(s), Some(false), "{s}");
    }
    assert_eq!(table.value("{A,C}"), Some(true));
    assert_eq!(table.value("{A,B,C}"), Some(true));
    // A and its complement {B,C} are both denied.
    assert!(table.rows.iter().find(|r| r.event == "{A}").unwrap().neither);

    let dsum = CoEvent::parse(t.space(), "AD* + BD* + CD*").unwrap();
    let table = anhomomorphism_report(&t, &dsum, &slits).unwrap();
    for (s, v) in [("{A}", true), ("{B}", true), ("{C}", true), ("{A,B}", false), ("{A,C}", false), ("{B,C}", false), ("{A,B,C}", true)] {
        assert_eq!(table.value(s), Some(v), "{s}");
    }
    let text = table.to_string();
    assert!(text.contains("{A,B}") && text.contains("yes"));
    let json: serde_json::Value = serde_json::from_str(&table.to_json()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn top_dual_is_true_only_on_full_union() {
    let t = registry::double_slit();
    let top = CoEvent::dual_of(t.space(), t.full()).unwrap();
    for text in ["A=AD,ADbar|B=BD,BDbar", "D=AD,BD|Dbar=ADbar,BDbar"] {
        let table = anhomomorphism_report(&t, &top, &part(&t, text)).unwrap();
        let trues: Vec<&str> = table.rows.iter().filter(|r| r.value).map(|r| r.event.as_str()).collect();
        assert_eq!(trues.len(), 1);
        assert_eq!(table.rows.last().unwrap().event, trues[0]);
    }
}

#[test]
fn example_7_1_is_not_weakly_consistent() {
    let t = registry::example_7_1();
    let ab = part(&t, "A=a1,a2|B=b1,b2");
    let r = consistency_check(&t, &ab, &Scheme::Multiplicative).unwrap();
    assert_eq!(r.coarse, ["A*", "B*"]);
    assert_eq!(r.fine, ["b2*"]);
    assert!(!r.weak.holds && !r.strong.holds && !r.total.holds);
    assert_eq!(r.weak.witness, Some(Witness::Unaffirmed { coarse: "A*".into(), event: "{A}".into() }));
    assert_eq!(r.total.witness, Some(Witness::MissingRestriction { coarse: "A*".into() }));
    assert!(r.to_json().contains("unaffirmed"));
}

#[test]
fn double_slit_detector_is_totally_consistent() {
    let t = registry::double_slit();
    let d = part(&t, "D=AD,BD|Dbar=ADbar,BDbar");
    let r = consistency_check(&t, &d, &Scheme::Multiplicative).unwrap();
    assert_eq!(r.coarse, ["Dbar*"]);
    assert_eq!(r.restricted, ["Dbar*", "Dbar*"]);
    assert!(r.total.holds && r.strong.holds && r.weak.holds);
}

#[test]
fn trivial_partition_is_totally_consistent() {
    for entry in registry::systems() {
        let t = entry.build();
        if t.len() > 10 {
            continue;
        }
        let r = consistency_check(&t, &Partition::trivial(t.space()), &Scheme::Multiplicative).unwrap();
        assert!(r.total.holds, "{}", entry.name);
    }
}

#[test]
fn separability_examples() {
    let t = registry::example_7_1();
    let ab = part(&t, "A=a1,a2|B=b1,b2");
    assert!(!preclusive_separability(&t, &ab, false).unwrap());
    let z = t.space().event_of(&["a1", "a2", "b1"]).unwrap();
    assert!(separability_violations(&t, &ab, false).unwrap().contains(&z));
    assert_eq!(separability_witness(&t, &ab, false).unwrap(), Some(t.space().event_of(&["a1"]).unwrap()));

    let d = registry::double_slit();
    let det = part(&d, "D=AD,BD|Dbar=ADbar,BDbar");
    assert!(preclusive_separability(&d, &det, false).unwrap());
    assert!(preclusive_separability(&d, &det, true).unwrap());

    let coin = registry::coin(&measure_core::ratio(1, 3), 3).unwrap();
    assert!(preclusive_separability(&coin, &Partition::finest(coin.space()), false).unwrap());
    assert!(preclusive_separability(&coin, &Partition::finest(coin.space()), true).unwrap());
}

#[test]
fn total_consistency_theorem_instances() {
    let d = registry::double_slit();
    assert!(verify_total_consistency_theorem(&d, &part(&d, "D=AD,BD|Dbar=ADbar,BDbar")).unwrap());
    for entry in registry::systems() {
        let t = entry.build();
        if t.len() > 10 || !t.is_strongly_positive() {
            continue;
        }
        assert!(verify_total_consistency_theorem(&t, &Partition::trivial(t.space())).unwrap(), "{}", entry.name);
    }
    let e = registry::example_7_1();
    assert!(matches!(
        verify_total_consistency_theorem(&e, &part(&e, "A=a1,a2|B=b1,b2")),
        Err(AnalysisError::PreconditionFailed(_))
    ));
}

#[test]
fn superdecoherence() {
    let t = registry::double_slit();
    assert!(is_superdecoherent(&t, &part(&t, "D=AD,BD|Dbar=ADbar,BDbar")));
    assert!(!is_superdecoherent(&t, &part(&t, "A=AD,ADbar|B=BD,BDbar")));
    assert!(is_superdecoherent(&t, &Partition::trivial(t.space())));
}

#[test]
fn implication_chain_on_registry() {
    for entry in registry::systems() {
        let t = entry.build();
        if t.len() > 10 || !t.is_strongly_positive() {
            continue;
        }
        let mut partitions: Vec<Partition> = entry.partitions.iter().map(|(n, _)| entry.partition(&t, n).unwrap()).collect();
        partitions.push(Partition::finest(t.space()));
        partitions.push(Partition::trivial(t.space()));
        for p in &partitions {
            let sd = is_superdecoherent(&t, p);
            let strong = preclusive_separability(&t, p, true).unwrap();
            let weak = preclusive_separability(&t, p, false).unwrap();
            assert!(!sd || strong, "{} {:?}", entry.name, p.names());
            assert!(!strong || weak, "{} {:?}", entry.name, p.names());
            for scheme in [Scheme::Multiplicative, Scheme::Classical, Scheme::Linear { unital: true }] {
                let r = consistency_check(&t, p, &scheme).unwrap();
                assert!(!r.total.holds || r.strong.holds);
                assert!(!r.strong.holds || r.weak.holds);
            }
        }
    }
}
