use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::MeasureError;
use crate::event::Partition;
use crate::scalar::{int, ratio};
use crate::theory::HistoriesTheory;

/// A named built-in system.
pub struct SystemEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Named partitions in `a,b|c,d` form.
    pub partitions: &'static [(&'static str, &'static str)],
    build: fn() -> HistoriesTheory,
}

impl SystemEntry {
    pub fn build(&self) -> HistoriesTheory {
        (self.build)()
    }

    pub fn partition(&self, theory: &HistoriesTheory, name: &str) -> Option<Partition> {
        self.partitions
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| Partition::parse(theory.space(), text).expect("registry partitions are valid"))
    }
}

const ENTRIES: &[SystemEntry] = &[
    SystemEntry {
        name: "double-slit",
        description: "two slits A, B and a dark-fringe detector D",
        partitions: &[("detector", "D=AD,BD|Dbar=ADbar,BDbar"), ("slit", "A=AD,ADbar|B=BD,BDbar")],
        build: double_slit,
    },
    SystemEntry {
        name: "triple-slit",
        description: "three slits A, B, C with a detector D",
        partitions: &[("detector", "D=AD,BD,CD|Dbar=ADbar,BDbar,CDbar"), ("slit", "A=AD,ADbar|B=BD,BDbar|C=CD,CDbar")],
        build: triple_slit,
    },
    SystemEntry {
        name: "four-slit",
        description: "four slits with detector; the linear scheme predicts D never fires",
        partitions: &[("detector", "D=D0,D1,D2,D3|Dbar=D0bar,D1bar,D2bar,D3bar")],
        build: four_slit,
    },
    SystemEntry {
        name: "sixteen-slit",
        description: "detector block of the sixteen-slit system with five null sets Z1..Z5",
        partitions: &[],
        build: sixteen_slit,
    },
    SystemEntry {
        name: "example-7.1",
        description: "four histories a1, a2, b1, b2 with a single null set {a1,a2,b1}",
        partitions: &[("ab", "A=a1,a2|B=b1,b2")],
        build: example_7_1,
    },
    SystemEntry {
        name: "lemma-5.4-toy",
        description: "rank-one toy with null sets {a0,a1}, {a0,a2}, {a1,a2,a3}",
        partitions: &[],
        build: lemma_5_4_toy,
    },
    SystemEntry {
        name: "lemma-5.5-toy",
        description: "rank-one toy whose null pairs {a0,ai} cover the space oddly",
        partitions: &[],
        build: lemma_5_5_toy,
    },
];

/// Built-in systems in a fixed order.
pub fn systems() -> &'static [SystemEntry] {
    ENTRIES
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn lookup(name: &str) -> Result<&'static SystemEntry, MeasureError> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| MeasureError::UnknownSystem(name.to_string()))
}

pub fn by_name(name: &str) -> Result<HistoriesTheory, MeasureError> {
    lookup(name).map(SystemEntry::build)
}

fn scaled(rows: &[&[i64]], denom: i64) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| ratio(x, denom)).collect()).collect()
}

fn block_diag(a: Vec<Vec<BigRational>>, b: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![BigRational::zero(); n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[n + i][n + j] = b[i][j].clone();
        }
    }
    out
}

/// Rank-one matrix v vᵀ.
pub fn outer(v: &[BigRational]) -> Vec<Vec<BigRational>> {
    v.iter().map(|a| v.iter().map(|b| a * b).collect()).collect()
}

pub fn double_slit() -> HistoriesTheory {
    let rows = scaled(&[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]], 4);
    HistoriesTheory::exact_real(["AD", "BD", "ADbar", "BDbar"], rows).expect("valid matrix")
}

pub fn triple_slit() -> HistoriesTheory {
    let det = scaled(&[&[1, -1, 1], &[-1, 1, -1], &[1, -1, 1]], 9);
    let non = scaled(&[&[2, 1, -1], &[1, 2, 1], &[-1, 1, 2]], 9);
    HistoriesTheory::exact_real(["AD", "BD", "CD", "ADbar", "BDbar", "CDbar"], block_diag(det, non)).expect("valid matrix")
}

pub fn four_slit() -> HistoriesTheory {
    let det = scaled(&[&[1, -1, -1, -1], &[-1, 1, 1, 1], &[-1, 1, 1, 1], &[-1, 1, 1, 1]], 16);
    let non = scaled(&[&[3, 1, 1, 1], &[1, 3, -1, -1], &[1, -1, 3, -1], &[1, -1, -1, 3]], 16);
    let labels = ["D0", "D1", "D2", "D3", "D0bar", "D1bar", "D2bar", "D3bar"];
    HistoriesTheory::exact_real(labels, block_diag(det, non)).expect("valid matrix")
}

/// Labels and coefficients of the sixteen detector histories.
///
/// Singletons and the full set carry 3/8, the ten triples carry -1/8. The
/// history for a subset S lies in Z_l exactly when l is in S.
pub fn sixteen_slit_coefficients() -> Vec<(String, BigRational)> {
    let mut out = Vec::with_capacity(16);
    for i in 1..=5 {
        out.push((format!("a{i}"), ratio(3, 8)));
    }
    for i in 1..=5 {
        for j in i + 1..=5 {
            for k in j + 1..=5 {
                out.push((format!("a{i}{j}{k}"), ratio(-1, 8)));
            }
        }
    }
    out.push(("a12345".to_string(), ratio(3, 8)));
    out
}

pub fn sixteen_slit() -> HistoriesTheory {
    let coeffs = sixteen_slit_coefficients();
    let v: Vec<BigRational> = coeffs.iter().map(|(_, c)| c.clone()).collect();
    HistoriesTheory::exact_real(coeffs.into_iter().map(|(l, _)| l), outer(&v)).expect("valid matrix")
}

pub fn example_7_1() -> HistoriesTheory {
    let rows = scaled(&[&[1, 0, -1, 1], &[0, 1, -1, 1], &[-1, -1, 2, -2], &[1, 1, -2, 4]], 1);
    HistoriesTheory::exact_real(["a1", "a2", "b1", "b2"], rows).expect("valid matrix")
}

pub fn lemma_5_4_toy() -> HistoriesTheory {
    let v = [int(1), int(-1), int(-1), int(2)];
    HistoriesTheory::exact_real(["a0", "a1", "a2", "a3"], outer(&v)).expect("valid matrix")
}

pub fn lemma_5_5_toy() -> HistoriesTheory {
    let v = [int(1), int(-1), int(-1), int(-1)];
    HistoriesTheory::exact_real(["a0", "a1", "a2", "a3"], outer(&v)).expect("valid matrix")
}

/// Classical coin tossed `tosses` times; histories are strings over `h`, `t`.
pub fn coin(p: &BigRational, tosses: usize) -> Result<HistoriesTheory, MeasureError> {
    if tosses == 0 || tosses > 6 {
        return Err(MeasureError::SpaceTooLarge { size: 1 << tosses.min(63), cap: 64 });
    }
    let q = BigRational::one() - p;
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for m in 0..1usize << tosses {
        let label: String = (0..tosses).map(|i| if m >> i & 1 == 0 { 'h' } else { 't' }).collect();
        let heads = tosses - m.count_ones() as usize;
        let w = num_traits::pow(p.clone(), heads) * num_traits::pow(q.clone(), tosses - heads);
        labels.push(label);
        weights.push(w);
    }
    HistoriesTheory::classical(labels, weights)
}
