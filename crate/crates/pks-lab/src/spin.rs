use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::colouring::{Colour, SymbolicEvent};
use crate::rays::{PeresSet, Ray};

pub type CMat3 = Matrix3<Complex64>;

/// Spin-1 matrices in the basis (|0,z⟩, |+1,z⟩, |−1,z⟩).
pub fn spin_matrices() -> [CMat3; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let z = c(0.0, 0.0);
    // rows and columns ordered 0, +1, -1
    let sx = CMat3::new(z, c(r, 0.0), c(r, 0.0), c(r, 0.0), z, z, c(r, 0.0), z, z);
    let sy = CMat3::new(z, c(0.0, r), c(0.0, -r), c(0.0, -r), z, z, c(0.0, r), z, z);
    let sz = CMat3::new(z, z, z, z, c(1.0, 0.0), z, z, z, c(-1.0, 0.0));
    [sx, sy, sz]
}

/// (P⁰, P¹) for the squared spin along the ray: P¹ = (S·n)², P⁰ = 1 − P¹.
pub fn spin1_projectors(ray: Ray) -> (CMat3, CMat3) {
    let n = ray.unit();
    let s = spin_matrices();
    let sn = s[0] * Complex64::from(n[0]) + s[1] * Complex64::from(n[1]) + s[2] * Complex64::from(n[2]);
    let p1 = sn * sn;
    (CMat3::identity() - p1, p1)
}

fn projector(ray: Ray, colour: Colour) -> CMat3 {
    let (p0, p1) = spin1_projectors(ray);
    match colour {
        Colour::Green => p0,
        Colour::Red => p1,
    }
}

/// Green is spin-squared zero, red is spin-squared one. Rays are multiplied in index order.
pub fn projector_product(set: &PeresSet, e: &SymbolicEvent) -> CMat3 {
    let mut m = CMat3::identity();
    for i in 0..set.len() {
        if e.green >> i & 1 == 1 {
            m = projector(set.rays[i], Colour::Green) * m;
        } else if e.red >> i & 1 == 1 {
            m = projector(set.rays[i], Colour::Red) * m;
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NullityReport {
    /// Largest norm among products that should vanish.
    pub max_vanishing: f64,
    /// Smallest norm among products that should not.
    pub min_surviving: f64,
    /// Basis and pair colour assignments whose vanishing disagrees with the null family.
    pub mismatches: usize,
    pub ok: bool,
}

/// Checks every orthogonal pair (four colourings) and every basis (eight colourings): the projector
/// product vanishes exactly when the event lies in the null family.
pub fn verify_pks_nullity(set: &PeresSet) -> NullityReport {
    let mut events = Vec::new();
    for &(i, j) in &set.pairs {
        for a in [Colour::Green, Colour::Red] {
            for b in [Colour::Green, Colour::Red] {
                events.push(SymbolicEvent::new(&[(i, a), (j, b)]));
            }
        }
    }
    for b in &set.bases {
        for code in 0..8 {
            let cols: Vec<(usize, Colour)> =
                (0..3).map(|k| (b[k], if code >> k & 1 == 1 { Colour::Green } else { Colour::Red })).collect();
            events.push(SymbolicEvent::new(&cols));
        }
    }
    let (mut max_vanishing, mut min_surviving, mut mismatches) = (0.0f64, f64::INFINITY, 0);
    for e in &events {
        let norm = projector_product(set, e).norm();
        let null = e.within_null_family(set);
        if null {
            max_vanishing = max_vanishing.max(norm);
        } else {
            min_surviving = min_surviving.min(norm);
        }
        if null != (norm <= 1e-12) {
            mismatches += 1;
        }
    }
    NullityReport { max_vanishing, min_surviving, mismatches, ok: mismatches == 0 && max_vanishing <= 1e-12 }
}
