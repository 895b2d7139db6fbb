//! Set-level counterexamples for a fair coin, small enough to enumerate.
//!
//! A history of `n` tosses is a mask with bit `i` set when toss `i + 1` lands
//! heads. Toss `i + 1` is odd-numbered when `i` is even.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::coin::{h_epsilon, uniform_counterexample_support_size, CoinModel, HEpsilon};
use crate::error::CournotError;

pub const TOSS_CAP: usize = 16;

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn measure(size: usize, n: usize) -> BigRational {
    BigRational::new(BigInt::from(size), BigInt::from(1u64) << n)
}

fn check(n: usize) -> Result<(), CournotError> {
    if n == 0 || n > TOSS_CAP {
        Err(CournotError::TooLarge { what: "tosses", size: n, cap: TOSS_CAP })
    } else {
        Ok(())
    }
}

fn threshold(n: usize, epsilon: &BigRational) -> Result<usize, CournotError> {
    match h_epsilon(&CoinModel::new(half(), n, epsilon.clone())?) {
        HEpsilon::Heads(h) => Ok(h),
        HEpsilon::NoneBelow => Err(CournotError::InvalidModel(format!("no head count is below {epsilon} at n = {n}"))),
    }
}

/// Whether C* is approximately preclusive and primitive for the uniform measure.
/// Supersets of C weigh at least μ(C), so preclusion is μ(C) ≥ ε; dropping any one
/// history must leave an ε-negligible set.
fn primitive(c: &[u32], n: usize, epsilon: &BigRational) -> (bool, bool) {
    let preclusive = measure(c.len(), n) >= *epsilon;
    (preclusive, preclusive && measure(c.len() - 1, n) < *epsilon)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SinglePartitionWitness {
    pub n: usize,
    pub h_epsilon: usize,
    /// |S| found by adding histories of N_{H_ε+1} one at a time.
    pub greedy_support: usize,
    /// |S| from the counting formula.
    pub formula_support: usize,
    pub dual: Vec<u32>,
    /// (C*(L), C*(G)) for the partition by head count.
    pub values: (bool, bool),
    pub preclusive: bool,
    pub primitive: bool,
}

/// C = S ⊔ L_{H_ε} built greedily, whose dual maps both L_{H_ε} and its complement to zero.
pub fn single_partition_witness(n: usize, epsilon: &BigRational) -> Result<SinglePartitionWitness, CournotError> {
    check(n)?;
    let h = threshold(n, epsilon)?;
    if h + 1 > n {
        return Err(CournotError::InvalidModel("every head count is below epsilon".into()));
    }
    let all = 0..1u32 << n;
    let heads = |g: u32| g.count_ones() as usize;
    let mut dual: Vec<u32> = all.clone().filter(|&g| heads(g) <= h).collect();
    let l_size = dual.len();
    for g in all.filter(|&g| heads(g) == h + 1) {
        if measure(dual.len(), n) >= *epsilon {
            break;
        }
        dual.push(g);
    }
    let counts = uniform_counterexample_support_size(&CoinModel::new(half(), n, epsilon.clone())?)?;
    let in_l = |g: &u32| heads(*g) <= h;
    let values = (dual.iter().all(in_l), dual.iter().all(|g| !in_l(g)));
    let (preclusive, primitive) = primitive(&dual, n, epsilon);
    Ok(SinglePartitionWitness {
        n,
        h_epsilon: h,
        greedy_support: dual.len() - l_size,
        formula_support: counts.support.to_usize().unwrap_or(usize::MAX),
        dual,
        values,
        preclusive,
        primitive,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvenOddWitness {
    pub m: usize,
    pub h_even: usize,
    pub h_odd: usize,
    pub dual: Vec<u32>,
    /// Values on L_E, G_E, L_O, G_O.
    pub values: [bool; 4],
    pub preclusive: bool,
    pub primitive: bool,
    pub classical_on_even: bool,
    pub classical_on_odd: bool,
}

fn count_at(g: u32, m: usize, offset: usize) -> usize {
    (0..m).filter(|k| g >> (2 * k + offset) & 1 == 1).count()
}

/// Even-trial heads.
pub fn even_heads(g: u32, m: usize) -> usize {
    count_at(g, m, 1)
}

/// Odd-trial heads.
pub fn odd_heads(g: u32, m: usize) -> usize {
    count_at(g, m, 0)
}

/// A primitive approximate co-event C* with C ⊆ G_E, containing the history with
/// heads on every even toss and tails on every odd one, plus one history of G_O.
pub fn even_odd_witness(m: usize, epsilon: &BigRational) -> Result<EvenOddWitness, CournotError> {
    let n = 2 * m;
    check(n)?;
    let h_even = threshold(m, epsilon)?;
    let h_odd = h_even;
    if h_even >= m {
        return Err(CournotError::InvalidModel("no history has more than H_ε even heads".into()));
    }
    let size = crate::coin::uniform_counterexample_support_size(&CoinModel::new(half(), n, epsilon.clone())?)?
        .primitive_size
        .to_usize()
        .unwrap_or(usize::MAX);
    let in_ge = |g: u32| even_heads(g, m) > h_even;
    let in_go = |g: u32| odd_heads(g, m) > h_odd;
    let gamma_e: u32 = (0..m).map(|k| 1u32 << (2 * k + 1)).sum();
    let all_heads: u32 = (1u32 << n) - 1;
    let mut dual = vec![gamma_e, all_heads];
    for g in 0..1u32 << n {
        if dual.len() >= size {
            break;
        }
        if in_ge(g) && !dual.contains(&g) {
            dual.push(g);
        }
    }
    if dual.len() < size {
        return Err(CournotError::InvalidModel("G_E is too small for a primitive dual".into()));
    }
    let all = |f: &dyn Fn(u32) -> bool| dual.iter().all(|&g| f(g));
    let values = [all(&|g| !in_ge(g)), all(&in_ge), all(&|g| !in_go(g)), all(&in_go)];
    let (preclusive, primitive) = primitive(&dual, n, epsilon);
    Ok(EvenOddWitness {
        m,
        h_even,
        h_odd,
        dual,
        values,
        preclusive,
        primitive,
        classical_on_even: values[0] != values[1],
        classical_on_odd: values[2] != values[3],
    })
}
