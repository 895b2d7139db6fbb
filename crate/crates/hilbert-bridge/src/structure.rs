use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use measure_core::{Event, HistoriesTheory};

use crate::error::BridgeError;
use crate::slits::{detector_theory, SlitCoefficients};

/// Solution of the slit problem structure for a given order n.
///
/// Histories are the odd-size subsets S of {1..m}; all subsets of one size q
/// share the coefficient C_q, and Z_l collects the subsets containing l.
#[derive(Clone, Debug)]
pub struct ProblemStructure {
    pub n: usize,
    pub m: usize,
    /// (q, C_q) for odd q.
    pub per_size: Vec<(usize, BigRational)>,
    pub subsets: Vec<u32>,
    pub coefficients: SlitCoefficients,
}

impl ProblemStructure {
    pub fn theory(&self) -> Result<HistoriesTheory, BridgeError> {
        detector_theory(&self.coefficients)
    }

    /// Z_l for l in 1..=m as events over the subset histories.
    pub fn z_sets(&self) -> Vec<Event> {
        (0..self.m)
            .map(|l| {
                let bits = self
                    .subsets
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| *s >> l & 1 == 1)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i);
                Event(bits)
            })
            .collect()
    }
}

/// N_pq: q-subsets of an m-set whose intersection with a fixed p-set is odd.
fn n_pq(m: usize, p: usize, q: usize) -> BigInt {
    let mut total = BigInt::zero();
    for r in (1..=p.min(q)).step_by(2) {
        if q - r <= m - p {
            total += binomial(BigInt::from(p), BigInt::from(r)) * binomial(BigInt::from(m - p), BigInt::from(q - r));
        }
    }
    total
}

/// Exact Gaussian elimination; free variables are set to zero.
fn solve(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..=unknowns {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][unknowns].clone();
    }
    Some(x)
}

fn attempt(n: usize, m: usize) -> Option<Vec<(usize, BigRational)>> {
    let qs: Vec<usize> = (1..=m).step_by(2).collect();
    let k = qs.len();
    let mut rows = Vec::new();
    for p in 1..=n.min(m) {
        let mut row: Vec<BigRational> = qs.iter().map(|&q| BigRational::from_integer(n_pq(m, p, q))).collect();
        row.push(BigRational::zero());
        rows.push(row);
    }
    let mut norm: Vec<BigRational> =
        qs.iter().map(|&q| BigRational::from_integer(binomial(BigInt::from(m), BigInt::from(q)))).collect();
    norm.push(BigRational::one());
    rows.push(norm);
    let x = solve(rows, k)?;
    if x.iter().any(Zero::is_zero) {
        return None;
    }
    Some(qs.into_iter().zip(x).collect())
}

/// Smallest m whose odd-size unknowns admit a nonzero solution in which every
/// symmetric difference of at most n of the Z_l sums to zero.
pub fn solve_problem_structure(n: usize) -> Result<ProblemStructure, BridgeError> {
    if n == 0 {
        return Err(BridgeError::InvalidSpec("order must be at least 1".into()));
    }
    let mut m = 2 * n + 1;
    loop {
        // 2^m - 1 odd subsets halved must fit in a 64-history space.
        if 1usize << (m - 1) > 64 {
            return Err(BridgeError::NoSolution(m));
        }
        if let Some(per_size) = attempt(n, m) {
            let mut subsets: Vec<u32> = (1u32..1 << m).filter(|s| s.count_ones() % 2 == 1).collect();
            subsets.sort_by_key(|s| (s.count_ones(), s.reverse_bits()));
            let labels = subsets
                .iter()
                .map(|s| format!("a{}", (0..m).filter(|l| s >> l & 1 == 1).map(|l| (l + 1).to_string()).collect::<String>()))
                .collect();
            let c = subsets
                .iter()
                .map(|s| per_size.iter().find(|(q, _)| *q == s.count_ones() as usize).unwrap().1.clone())
                .collect();
            let coefficients = SlitCoefficients::labelled(labels, c)?;
            return Ok(ProblemStructure { n, m, per_size, subsets, coefficients });
        }
        m += 1;
    }
}
