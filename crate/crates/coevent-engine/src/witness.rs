use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use measure_core::{Event, HistoriesTheory};

use crate::coevent::CoEvent;
use crate::error::EngineError;

/// Quadratic preclusive co-event built from the integer structure of D.
///
/// Scale Re D to integers, double the strict lower triangle and clear the
/// strict upper one, divide by the gcd and reduce mod 2. Then φ(A) is the
/// parity of μ(A) divided by that gcd, so it vanishes on null events, and the
/// gcd division leaves at least one odd coefficient.
pub fn quadratic_witness(theory: &HistoriesTheory) -> Result<CoEvent, EngineError> {
    let d = theory.functional();
    if !d.is_exact() {
        return Err(EngineError::NotExactMode);
    }
    let n = theory.len();
    let re = |i: usize, j: usize| d.entry_exact(i, j).expect("exact").re.clone();
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(BigInt::one(), |l, (i, j)| l.lcm(re(i, j).denom()));
    let mut hat = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in hat.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate().take(i + 1) {
            let r = re(i, j);
            let v = r.numer() * (&scale / r.denom());
            *cell = if i == j { v } else { v * 2 };
        }
    }
    let g = hat.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        // μ vanishes identically, so no non-zero preclusive co-event exists.
        return Err(EngineError::ZeroMap);
    }
    let mut monos = Vec::new();
    for (i, row) in hat.iter().enumerate() {
        for (j, cell) in row.iter().enumerate().take(i + 1) {
            if (cell / &g).is_odd() {
                monos.push(Event::singleton(i) | Event::singleton(j));
            }
        }
    }
    CoEvent::new(theory.space(), monos)
}
