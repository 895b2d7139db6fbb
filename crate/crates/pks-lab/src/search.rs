use serde::Serialize;

use crate::colouring::PeresColouring;
use crate::rays::PeresSet;

/// Which constraints a search enforces.
#[derive(Clone, Debug)]
pub struct Constraints {
    /// Bases needing exactly one green ray.
    pub bases: Vec<[usize; 3]>,
    /// `orth[i]`: rays that may not be green together with ray i.
    pub orth: Vec<u64>,
    /// Rays searched over; the others stay red.
    pub vars: u64,
}

impl Constraints {
    pub fn full(set: &PeresSet) -> Self {
        Self { bases: set.bases.clone(), orth: set.orth.clone(), vars: (1u64 << set.len()) - 1 }
    }

    /// Bases and pairs not lying entirely inside `c`.
    pub fn outside(set: &PeresSet, c: u64) -> Self {
        let bases = set.bases.iter().copied().filter(|b| set.basis_mask(*b) & !c != 0).collect();
        let orth = (0..set.len())
            .map(|i| if c >> i & 1 == 1 { set.orth[i] & !c } else { set.orth[i] })
            .collect();
        Self { bases, orth, vars: (1u64 << set.len()) - 1 }
    }

    /// One basis on its own.
    pub fn single_basis(set: &PeresSet, b: [usize; 3]) -> Self {
        let mask = set.basis_mask(b);
        let orth = (0..set.len()).map(|i| if mask >> i & 1 == 1 { set.orth[i] & mask } else { 0 }).collect();
        Self { bases: vec![b], orth, vars: mask }
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct State {
    green: u64,
    red: u64,
}

/// Outcome of a colouring search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub satisfiable: bool,
    /// Search nodes visited, one per branching decision plus the root.
    pub nodes: u64,
    pub solutions: Vec<PeresColouring>,
}

pub struct Solver<'a> {
    c: &'a Constraints,
    order: Vec<usize>,
    of_ray: Vec<Vec<usize>>,
    nodes: u64,
}

impl<'a> Solver<'a> {
    /// Variables are tried in order of basis membership, most first.
    pub fn new(set: &PeresSet, c: &'a Constraints) -> Self {
        let mut of_ray = vec![Vec::new(); set.len()];
        for (k, b) in c.bases.iter().enumerate() {
            for &i in b {
                of_ray[i].push(k);
            }
        }
        let mut order: Vec<usize> = (0..set.len()).filter(|&i| c.vars >> i & 1 == 1).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(of_ray[i].len()));
        Self { c, order, of_ray, nodes: 0 }
    }

    fn assign(&self, s: &mut State, ray: usize, green: bool) -> bool {
        let mut queue = vec![(ray, green)];
        while let Some((i, g)) = queue.pop() {
            let bit = 1u64 << i;
            if g {
                if s.red & bit != 0 {
                    return false;
                }
                if s.green & bit != 0 {
                    continue;
                }
                s.green |= bit;
                let mut forced = self.c.orth[i];
                for &k in &self.of_ray[i] {
                    for &j in &self.c.bases[k] {
                        if j != i {
                            forced |= 1 << j;
                        }
                    }
                }
                let mut m = forced;
                while m != 0 {
                    let j = m.trailing_zeros() as usize;
                    m &= m - 1;
                    queue.push((j, false));
                }
            } else {
                if s.green & bit != 0 {
                    return false;
                }
                if s.red & bit != 0 {
                    continue;
                }
                s.red |= bit;
                for &k in &self.of_ray[i] {
                    let b = self.c.bases[k];
                    let reds = b.iter().filter(|&&j| s.red >> j & 1 == 1).count();
                    if reds == 3 {
                        return false;
                    }
                    if reds == 2 {
                        let j = *b.iter().find(|&&j| s.red >> j & 1 == 0).expect("one ray left");
                        queue.push((j, true));
                    }
                }
            }
        }
        true
    }

    fn start(&self, fixed_green: u64, fixed_red: u64) -> Option<State> {
        let mut s = State::default();
        for i in 0..64 {
            if fixed_green >> i & 1 == 1 && !self.assign(&mut s, i, true) {
                return None;
            }
        }
        for i in 0..64 {
            if (fixed_red | !self.c.vars) >> i & 1 == 1 && i < self.of_ray.len() && !self.assign(&mut s, i, false) {
                return None;
            }
        }
        Some(s)
    }

    fn walk(&mut self, s: State, limit: usize, out: &mut Vec<PeresColouring>) {
        self.nodes += 1;
        if out.len() >= limit {
            return;
        }
        let free = self.order.iter().copied().find(|&i| (s.green | s.red) >> i & 1 == 0);
        match free {
            None => out.push(PeresColouring(s.green)),
            Some(i) => {
                for g in [true, false] {
                    let mut t = s;
                    if self.assign(&mut t, i, g) {
                        self.walk(t, limit, out);
                    }
                }
            }
        }
    }

    /// Up to `limit` solutions extending the fixed colours.
    pub fn solve(&mut self, fixed_green: u64, fixed_red: u64, limit: usize) -> SearchReport {
        self.nodes = 0;
        let mut out = Vec::new();
        if let Some(s) = self.start(fixed_green, fixed_red) {
            self.walk(s, limit, &mut out);
        } else {
            self.nodes = 1;
        }
        out.sort();
        SearchReport { satisfiable: !out.is_empty(), nodes: self.nodes, solutions: out }
    }
}

/// Exhaustive search over all colourings; UNSAT is the theorem.
pub fn prove_no_consistent_colouring(set: &PeresSet) -> SearchReport {
    let c = Constraints::full(set);
    Solver::new(set, &c).solve(0, 0, 1)
}

/// Colourings with every ray of `c` red, consistent on all bases and pairs not inside `c`.
pub fn r_set(set: &PeresSet, c: u64) -> Vec<PeresColouring> {
    let cons = Constraints::outside(set, c);
    Solver::new(set, &cons).solve(0, c, usize::MAX).solutions
}

/// One step of the basis-by-basis forcing argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedStep {
    /// Basis number, from 1.
    pub basis: usize,
    pub ray: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingChain {
    pub steps: Vec<ForcedStep>,
    /// First basis found with all three rays red.
    pub conflict: Option<usize>,
    pub greens: u64,
    pub reds: u64,
}

/// Walks the bases in order. Each sweep forces green on the first basis with two red rays, and
/// every ray orthogonal to a green ray is red.
pub fn forcing_chain(set: &PeresSet, initial_greens: &[usize]) -> ForcingChain {
    let mut greens = initial_greens.iter().fold(0u64, |m, &i| m | 1 << i);
    let close = |g: u64| (0..set.len()).filter(|&i| g >> i & 1 == 1).fold(0u64, |m, i| m | set.orth[i]);
    let mut reds = close(greens);
    let mut steps = Vec::new();
    loop {
        if let Some(b) = set.bases.iter().position(|b| set.basis_mask(*b) & !reds == 0) {
            return ForcingChain { steps, conflict: Some(b + 1), greens, reds };
        }
        let next = set.bases.iter().enumerate().find_map(|(k, b)| {
            let mask = set.basis_mask(*b);
            let open = mask & !reds & !greens;
            (mask & greens == 0 && (mask & reds).count_ones() == 2 && open != 0).then(|| (k, open.trailing_zeros() as usize))
        });
        match next {
            Some((k, ray)) => {
                steps.push(ForcedStep { basis: k + 1, ray });
                greens |= 1 << ray;
                reds = close(greens);
            }
            None => return ForcingChain { steps, conflict: None, greens, reds },
        }
    }
}
