use bigdecimal::BigDecimal;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::CournotError;

/// A coin with heads probability `p` tossed `n` times, tested at threshold `epsilon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoinModel {
    pub p: BigRational,
    pub n: usize,
    pub epsilon: BigRational,
}

impl CoinModel {
    pub fn new(p: BigRational, n: usize, epsilon: BigRational) -> Result<Self, CournotError> {
        if !(p.is_positive() && p < BigRational::one()) {
            return Err(CournotError::InvalidModel(format!("p = {p} is not in (0, 1)")));
        }
        if n == 0 {
            return Err(CournotError::InvalidModel("at least one toss".into()));
        }
        if !(epsilon.is_positive() && epsilon <= BigRational::one()) {
            return Err(CournotError::InvalidModel(format!("epsilon = {epsilon} is not in (0, 1]")));
        }
        Ok(Self { p, n, epsilon })
    }

    pub fn distribution(&self) -> Distribution {
        Distribution::new(&self.p, self.n)
    }

    fn check_heads(&self, heads: usize) -> Result<(), CournotError> {
        if heads > self.n {
            Err(CournotError::OutOfRange { heads, n: self.n })
        } else {
            Ok(())
        }
    }
}

/// Binomial head counts as integer numerators over the common denominator bⁿ, p = a/b.
#[derive(Clone, Debug)]
pub struct Distribution {
    terms: Vec<BigInt>,
    cumulative: Vec<BigInt>,
    single: Vec<BigInt>,
    denom: BigInt,
}

impl Distribution {
    fn new(p: &BigRational, n: usize) -> Self {
        let a = p.numer().clone();
        let b = p.denom().clone();
        let c = &b - &a;
        let mut pa = vec![BigInt::one()];
        let mut pc = vec![BigInt::one()];
        for i in 1..=n {
            pa.push(&pa[i - 1] * &a);
            pc.push(&pc[i - 1] * &c);
        }
        let single: Vec<BigInt> = (0..=n).map(|h| &pa[h] * &pc[n - h]).collect();
        let mut binom = BigInt::one();
        let mut terms = Vec::with_capacity(n + 1);
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = BigInt::zero();
        for (h, s) in single.iter().enumerate() {
            let t = &binom * s;
            acc += &t;
            terms.push(t);
            cumulative.push(acc.clone());
            binom = binom * BigInt::from(n - h) / BigInt::from(h + 1);
        }
        Self { terms, cumulative, single, denom: Pow::pow(&b, n) }
    }

    pub fn n(&self) -> usize {
        self.terms.len() - 1
    }

    /// ℙ(N_H): exactly `heads` heads.
    pub fn exactly(&self, heads: usize) -> BigRational {
        BigRational::new(self.terms[heads].clone(), self.denom.clone())
    }

    /// ℙ(L_H): at most `heads` heads.
    pub fn at_most(&self, heads: usize) -> BigRational {
        BigRational::new(self.cumulative[heads].clone(), self.denom.clone())
    }

    /// Probability of one history with `heads` heads.
    pub fn history(&self, heads: usize) -> BigRational {
        BigRational::new(self.single[heads].clone(), self.denom.clone())
    }

    /// Number of head counts H with ℙ(L_H) < ε, found by bisection.
    fn count_below(&self, epsilon: &BigRational) -> usize {
        // ℙ(L_H) < ε  ⇔  cumulative[H] · denom(ε) < numer(ε) · bⁿ
        let bound = epsilon.numer() * &self.denom;
        let scale = epsilon.denom();
        self.cumulative.partition_point(|c| c * scale < bound)
    }
}

pub fn binomial_measure(model: &CoinModel, heads: usize) -> Result<BigRational, CournotError> {
    model.check_heads(heads)?;
    Ok(model.distribution().exactly(heads))
}

/// CP(N_H) = Σ_{m ≤ H} ℙ(N_m).
pub fn cumulative(model: &CoinModel, heads: usize) -> Result<BigRational, CournotError> {
    model.check_heads(heads)?;
    Ok(model.distribution().at_most(heads))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HEpsilon {
    /// Even zero heads has cumulative probability at least ε.
    NoneBelow,
    Heads(usize),
}

impl HEpsilon {
    pub fn heads(self) -> Option<usize> {
        match self {
            HEpsilon::NoneBelow => None,
            HEpsilon::Heads(h) => Some(h),
        }
    }
}

/// Greatest H with CP(N_H) < ε.
pub fn h_epsilon(model: &CoinModel) -> HEpsilon {
    match model.distribution().count_below(&model.epsilon) {
        0 => HEpsilon::NoneBelow,
        k => HEpsilon::Heads(k - 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Reject,
    FailToReject,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestOutcome {
    pub verdict: Verdict,
    pub observed: usize,
    /// CP(N_observed) as `numer/denom`.
    pub cumulative: String,
    pub decimal: String,
}

/// One-tailed test: reject the coin hypothesis iff CP(N_observed) < ε.
pub fn hypothesis_test(model: &CoinModel, observed: usize) -> Result<TestOutcome, CournotError> {
    let cp = cumulative(model, observed)?;
    let verdict = if cp < model.epsilon { Verdict::Reject } else { Verdict::FailToReject };
    Ok(TestOutcome { verdict, observed, cumulative: cp.to_string(), decimal: decimal(&cp, 30) })
}

/// Largest single-history probability p^H (1−p)^(n−H) over all H.
pub fn max_history_probability(model: &CoinModel) -> BigRational {
    let d = model.distribution();
    (0..=model.n).map(|h| d.history(h)).max().expect("n ≥ 1")
}

/// True iff every single history has probability below ε.
pub fn strong_cournot_all_histories_ruled_out(model: &CoinModel) -> bool {
    max_history_probability(model) < model.epsilon
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformCounts {
    pub h_epsilon: HEpsilon,
    /// |S| = Int((ε − ℙ(L_{H_ε})) / pⁿ).
    #[serde(serialize_with = "as_decimal")]
    pub support: BigInt,
    /// Int(ε p⁻ⁿ): dual size of a primitive approximate co-event.
    #[serde(serialize_with = "as_decimal")]
    pub primitive_size: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ceil(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// Exact counts behind the uniform-coin counterexamples. Int is the ceiling.
pub fn uniform_counterexample_support_size(model: &CoinModel) -> Result<UniformCounts, CournotError> {
    if model.p != BigRational::new(1.into(), 2.into()) {
        return Err(CournotError::NotUniform);
    }
    let h = h_epsilon(model);
    let d = model.distribution();
    let below = h.heads().map_or_else(BigRational::zero, |k| d.at_most(k));
    let pn = d.history(0);
    Ok(UniformCounts {
        h_epsilon: h,
        support: ceil(&((&model.epsilon - below) / &pn)),
        primitive_size: ceil(&(&model.epsilon / pn)),
    })
}

/// Scientific notation with `digits` significant digits.
pub fn decimal(r: &BigRational, digits: u64) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let q = BigDecimal::new(r.numer().clone(), 0) / BigDecimal::new(r.denom().clone(), 0);
    q.with_prec(digits).to_scientific_notation()
}
