use std::fmt;

use serde::Serialize;

use crate::error::PksError;

/// Peres rays in the order of the type table. These spellings are used for display.
pub const RAY_NAMES: [&str; 33] = [
    "001", "010", "100", // type I
    "011", "01-1", "101", "10-1", "110", "1-10", // type II
    "012", "0-12", "021", "02-1", "102", "-102", "201", "20-1", "120", "-120", "210", "2-10", // type III
    "112", "-112", "1-12", "-1-12", "121", "12-1", "-121", "-12-1", "211", "21-1", "2-11", "2-1-1", // type IV
];

/// The eleven bases of the classic forcing argument, first ray listed first.
pub const NAMED_BASES: [[&str; 3]; 11] = [
    ["001", "100", "010"],
    ["101", "-101", "010"],
    ["011", "0-11", "100"],
    ["1-12", "-112", "110"],
    ["102", "20-1", "010"],
    ["211", "0-11", "2-1-1"],
    ["201", "010", "-102"],
    ["112", "1-10", "-1-12"],
    ["012", "100", "02-1"],
    ["121", "-101", "-12-1"],
    ["100", "021", "0-12"],
];

/// A direction in Peres shorthand: each component is 0, ±1 or ±2, where 2 stands for √2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ray(pub [i8; 3]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RayType {
    I,
    II,
    III,
    IV,
}

impl Ray {
    /// Sign-normalised so that the first non-zero component is positive.
    pub fn canonical(self) -> Ray {
        let first = self.0.iter().copied().find(|&x| x != 0).unwrap_or(0);
        if first < 0 {
            Ray(self.0.map(|x| -x))
        } else {
            self
        }
    }

    /// Parses shorthand such as `0-12` or `-1-12`.
    pub fn parse(text: &str) -> Result<Ray, PksError> {
        let bad = || PksError::BadRay(text.to_string());
        let mut out = Vec::with_capacity(3);
        let mut neg = false;
        for ch in text.trim().chars() {
            match ch {
                '-' if !neg => neg = true,
                '0' | '1' | '2' => {
                    let d = ch as i8 - b'0' as i8;
                    out.push(if neg { -d } else { d });
                    neg = false;
                }
                _ => return Err(bad()),
            }
        }
        if out.len() != 3 || neg || out.iter().all(|&x| x == 0) {
            return Err(bad());
        }
        Ok(Ray([out[0], out[1], out[2]]).canonical())
    }

    /// Inner product as `a + b√2`.
    pub fn dot(self, other: Ray) -> (i32, i32) {
        let (mut a, mut b) = (0i32, 0i32);
        for k in 0..3 {
            let (x, y) = (self.0[k] as i32, other.0[k] as i32);
            let s = (x * y).signum();
            match (x * y).abs() {
                0 => {}
                1 => a += s,
                2 => b += s,
                4 => a += 2 * s,
                _ => unreachable!(),
            }
        }
        (a, b)
    }

    pub fn is_orthogonal(self, other: Ray) -> bool {
        self.dot(other) == (0, 0)
    }

    pub fn ray_type(self) -> RayType {
        let mut mags: Vec<i8> = self.0.iter().map(|x| x.abs()).collect();
        mags.sort();
        match mags.as_slice() {
            [0, 0, 1] => RayType::I,
            [0, 1, 1] => RayType::II,
            [0, 1, 2] => RayType::III,
            [1, 1, 2] => RayType::IV,
            _ => panic!("not a Peres direction: {:?}", self.0),
        }
    }

    /// Real unit vector with 2 read as √2.
    pub fn unit(self) -> [f64; 3] {
        let v = self.0.map(|x| (x.signum() as f64) * (x.unsigned_abs() as f64).sqrt());
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.map(|x| x / norm)
    }

    /// Shorthand with a minus before each negative component.
    pub fn shorthand(self) -> String {
        self.0.iter().map(|&x| if x < 0 { format!("-{}", -x) } else { x.to_string() }).collect()
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.shorthand())
    }
}

/// The 33 rays with their bases and orthogonal pairs.
#[derive(Clone, Debug)]
pub struct PeresSet {
    pub rays: Vec<Ray>,
    pub names: Vec<String>,
    /// Mutually orthogonal triples. The first eleven are the named bases.
    pub bases: Vec<[usize; 3]>,
    /// All orthogonal pairs (i < j).
    pub pairs: Vec<(usize, usize)>,
    /// `orth[i]` has bit j set when rays i and j are orthogonal.
    pub orth: Vec<u64>,
}

pub const RAY_COUNT: usize = 33;

impl PeresSet {
    pub fn build() -> Self {
        let rays: Vec<Ray> = RAY_NAMES.iter().map(|s| Ray::parse(s).expect("table spelling")).collect();
        let names = RAY_NAMES.iter().map(|s| s.to_string()).collect();
        let n = rays.len();
        let mut orth = vec![0u64; n];
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rays[i].is_orthogonal(rays[j]) {
                    orth[i] |= 1 << j;
                    orth[j] |= 1 << i;
                    pairs.push((i, j));
                }
            }
        }
        let mut triples = Vec::new();
        for &(i, j) in &pairs {
            for k in j + 1..n {
                if orth[i] >> k & 1 == 1 && orth[j] >> k & 1 == 1 {
                    triples.push([i, j, k]);
                }
            }
        }
        let mut set = Self { rays, names, bases: Vec::new(), pairs, orth };
        let mut bases: Vec<[usize; 3]> = NAMED_BASES
            .iter()
            .map(|b| b.map(|s| set.index_of_str(s).expect("named basis ray")))
            .collect();
        for t in triples {
            if !bases.iter().any(|b| sorted(*b) == t) {
                bases.push(t);
            }
        }
        set.bases = bases;
        set
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn index_of(&self, ray: Ray) -> Option<usize> {
        let c = ray.canonical();
        self.rays.iter().position(|r| *r == c)
    }

    pub fn index_of_str(&self, text: &str) -> Result<usize, PksError> {
        let ray = Ray::parse(text)?;
        self.index_of(ray).ok_or_else(|| PksError::NotPeresRay(text.to_string()))
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Basis number as in the forcing table, starting at 1.
    pub fn basis(&self, number: usize) -> [usize; 3] {
        self.bases[number - 1]
    }

    pub fn basis_mask(&self, b: [usize; 3]) -> u64 {
        b.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn type_counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for r in &self.rays {
            c[r.ray_type() as usize] += 1;
        }
        c
    }

    /// Number of bases each ray belongs to.
    pub fn basis_degree(&self) -> Vec<usize> {
        let mut d = vec![0; self.len()];
        for b in &self.bases {
            for &i in b {
                d[i] += 1;
            }
        }
        d
    }
}

fn sorted(mut b: [usize; 3]) -> [usize; 3] {
    b.sort();
    b
}
