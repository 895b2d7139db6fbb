use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Group counts and radii realising slit amplitudes a_i.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupingReport {
    pub approximations: Vec<BigRational>,
    pub lcm: BigInt,
    pub counts: Vec<BigInt>,
    /// R_i / R_1 = √(a_i / a_1).
    pub radius_ratios: Vec<f64>,
}

/// Best rational approximation with denominator at most `max_den`, by continued fractions.
pub fn best_rational(x: f64, max_den: u64) -> BigRational {
    let max_den = max_den.max(1);
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            // Semiconvergent with the largest admissible multiplier.
            let k = (max_den as i128 - q0) / q1;
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            let better = ((ps as f64 / qs as f64) - x).abs() < ((p1 as f64 / q1 as f64) - x).abs();
            return if better { frac(ps, qs) } else { frac(p1, q1) };
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let f = r - a;
        if f.abs() < 1e-15 {
            break;
        }
        r = 1.0 / f;
    }
    frac(p1, q1)
}

fn frac(p: i128, q: i128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn slit_grouping(amplitudes: &[f64], max_den: u64) -> GroupingReport {
    let approximations: Vec<BigRational> = amplitudes.iter().map(|&a| best_rational(a, max_den)).collect();
    let lcm = approximations.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let counts = approximations
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let first = amplitudes.first().copied().unwrap_or(1.0);
    let radius_ratios = amplitudes
        .iter()
        .map(|&a| if first.is_zero() { f64::NAN } else { (a / first).sqrt() })
        .collect();
    GroupingReport { approximations, lcm, counts, radius_ratios }
}

impl GroupingReport {
    pub fn counts_u64(&self) -> Vec<u64> {
        self.counts.iter().map(|c| c.to_u64().unwrap_or(u64::MAX)).collect()
    }
}
