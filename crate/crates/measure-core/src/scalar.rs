use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::MeasureError;

/// Real value produced by a measure, exact or floating depending on the theory.
#[derive(Clone, Debug, PartialEq)]
pub enum Real {
    Exact(BigRational),
    Float(f64),
}

impl Real {
    pub fn zero_like(&self) -> Real {
        match self {
            Real::Exact(_) => Real::Exact(BigRational::zero()),
            Real::Float(_) => Real::Float(0.0),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => rational_to_f64(r),
            Real::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Float(_) => None,
        }
    }

    /// Zero test: exact equality, or `|x| <= tol` for floats.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            Real::Exact(r) => r.is_zero(),
            Real::Float(x) => x.abs() <= tol,
        }
    }

    /// Compares against a rational threshold.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        match self {
            Real::Exact(r) => r.cmp(q),
            Real::Float(x) => x.partial_cmp(&rational_to_f64(q)).unwrap_or(Ordering::Equal),
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(r.abs()),
            Real::Float(x) => Real::Float(x.abs()),
        }
    }

    pub fn scale(&self, k: i64) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(r * BigRational::from_integer(BigInt::from(k))),
            Real::Float(x) => Real::Float(x * k as f64),
        }
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, rhs: Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            (a, b) => Real::Float(a.to_f64() + b.to_f64()),
        }
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, rhs: Real) -> Real {
        self + (-rhs)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(a) => Real::Exact(-a),
            Real::Float(x) => Real::Float(-x),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) => write!(f, "{}", r),
            Real::Float(x) => write!(f, "{}", x),
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Shift both sides down so the quotient stays representable.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or an integer. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Result<BigRational, MeasureError> {
    let t = text.trim();
    let bad = || MeasureError::BadRational(text.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(p, q))
    } else {
        let p: BigInt = t.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(p))
    }
}

/// Parses a rational or a decimal such as `0.3` (converted exactly).
pub fn parse_rational_or_decimal(text: &str) -> Result<BigRational, MeasureError> {
    if let Ok(r) = parse_rational(text) {
        return Ok(r);
    }
    let t = text.trim();
    let bad = || MeasureError::BadRational(text.to_string());
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').ok_or_else(bad)?;
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) || (whole.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let digits = format!("{}{}", whole, frac);
    let n: BigInt = digits.parse().map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(n * sign, d))
}
