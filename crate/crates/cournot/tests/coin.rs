use cournot::*;
use measure_core::{parse_rational, ratio};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn model(p: &str, n: usize, eps: &str) -> CoinModel {
    CoinModel::new(q(p), n, q(eps)).unwrap()
}

fn thousand() -> CoinModel {
    model("1/2", 1000, "1/1000")
}

#[test]
fn small_binomials() {
    let m = model("1/2", 2, "1/10");
    assert_eq!(binomial_measure(&m, 1).unwrap(), ratio(1, 2));
    assert_eq!(cumulative(&m, 1).unwrap(), ratio(3, 4));
    assert!(matches!(cumulative(&m, 3), Err(CournotError::OutOfRange { heads: 3, n: 2 })));
}

#[test]
fn binomials_match_enumeration() {
    let m = model("2/7", 6, "1/10");
    for h in 0..=6 {
        let mut want = BigRational::from_integer(0.into());
        for g in 0u32..64 {
            let heads = g.count_ones() as usize;
            if heads <= h {
                want += Pow::pow(ratio(2, 7), heads) * Pow::pow(ratio(5, 7), 6 - heads);
            }
        }
        assert_eq!(cumulative(&m, h).unwrap(), want);
    }
    assert_eq!(cumulative(&m, 6).unwrap(), BigRational::one());
}

#[test]
fn thousand_tosses_boundary() {
    let m = thousand();
    assert!(cumulative(&m, 450).unwrap() < ratio(1, 1000));
    assert!(cumulative(&m, 451).unwrap() >= ratio(1, 1000));
    assert_eq!(h_epsilon(&m), HEpsilon::Heads(450));
    assert_eq!(hypothesis_test(&m, 450).unwrap().verdict, Verdict::Reject);
    assert_eq!(hypothesis_test(&m, 451).unwrap().verdict, Verdict::FailToReject);
    assert_eq!(hypothesis_test(&m, 1000).unwrap().verdict, Verdict::FailToReject);
}

#[test]
fn test_outcome_renders_the_value() {
    let out = hypothesis_test(&model("1/2", 2, "1/10"), 1).unwrap();
    assert_eq!(out.cumulative, "3/4");
    assert_eq!(out.decimal, format!("7.5{}e-1", "0".repeat(28)));
    let out = hypothesis_test(&thousand(), 450).unwrap();
    assert!(out.decimal.ends_with("e-4"), "{}", out.decimal);
    assert_eq!(out.decimal.split('e').next().unwrap().len(), 31);
}

#[test]
fn h_epsilon_edges() {
    assert_eq!(h_epsilon(&model("1/2", 7, "1")), HEpsilon::Heads(6));
    assert_eq!(h_epsilon(&model("3/4", 5, "1")), HEpsilon::Heads(4));
    // 1/1024 < 1/1000, so zero heads already qualifies
    assert_eq!(h_epsilon(&model("1/2", 10, "1/1000")), HEpsilon::Heads(0));
    assert_eq!(h_epsilon(&model("1/2", 9, "1/1000")), HEpsilon::NoneBelow);
}

#[test]
fn h_epsilon_is_the_boundary() {
    for (p, n, e) in [("1/2", 40, "1/100"), ("1/3", 25, "1/20"), ("4/5", 30, "1/7")] {
        let m = model(p, n, e);
        let eps = q(e);
        match h_epsilon(&m) {
            HEpsilon::Heads(h) => {
                assert!(cumulative(&m, h).unwrap() < eps);
                assert!(cumulative(&m, h + 1).unwrap() >= eps);
            }
            HEpsilon::NoneBelow => assert!(cumulative(&m, 0).unwrap() >= eps),
        }
    }
}

#[test]
fn single_histories_flip_between_nine_and_ten() {
    assert!(strong_cournot_all_histories_ruled_out(&model("1/2", 10, "1/1000")));
    assert!(!strong_cournot_all_histories_ruled_out(&model("1/2", 9, "1/1000")));
    assert!(strong_cournot_all_histories_ruled_out(&model("1/2", 1, "1")));
    assert_eq!(max_history_probability(&model("1/3", 4, "1/2")), Pow::pow(ratio(2, 3), 4u32));
}

#[test]
fn uniform_counts_at_a_thousand() {
    let c = uniform_counterexample_support_size(&thousand()).unwrap();
    let s = c.support.to_string();
    assert_eq!(s.len(), 298);
    assert!(s.starts_with("14"), "{}", &s[..5]);
    assert_eq!(c.h_epsilon, HEpsilon::Heads(450));
}

#[test]
fn uniform_primitive_size_at_two_thousand() {
    let c = uniform_counterexample_support_size(&model("1/2", 2000, "1/1000")).unwrap();
    assert_eq!(c.primitive_size.to_string().len(), 600);
    let exact = model("1/2", 5, "1/32");
    assert_eq!(uniform_counterexample_support_size(&exact).unwrap().primitive_size, BigInt::one());
    assert!(matches!(
        uniform_counterexample_support_size(&model("1/3", 5, "1/32")),
        Err(CournotError::NotUniform)
    ));
}

#[test]
fn invalid_models_are_rejected() {
    assert!(CoinModel::new(q("1"), 3, q("1/2")).is_err());
    assert!(CoinModel::new(q("0"), 3, q("1/2")).is_err());
    assert!(CoinModel::new(q("1/2"), 0, q("1/2")).is_err());
    assert!(CoinModel::new(q("1/2"), 3, q("0")).is_err());
    assert!(CoinModel::new(q("1/2"), 3, q("3/2")).is_err());
}
