//! Small fixed subgraphs whose absence defines `B⁺`, with fast occurrence
//! counts and a brute-force subgraph counter used to cross-check them.

use serde::{Deserialize, Serialize};

use crate::bigraph::{four_cycles, intersect_sorted, BipartiteGraph, FourCycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    /// `K_{3,2}`, three left and two right vertices.
    K32,
    /// `K_{2,3}`.
    K23,
    /// Two 4-cycles sharing a right vertex (shapes `a` and `b`).
    TwoFourCyclesSharedRight,
    /// Three right-disjoint 4-cycles on at most four left vertices
    /// (shapes `c`, `d` and `e`).
    ThreeFourCyclesFourLeft,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::K32,
        Pattern::K23,
        Pattern::TwoFourCyclesSharedRight,
        Pattern::ThreeFourCyclesFourLeft,
    ];

    /// The concrete subgraphs whose copies make up one occurrence each.
    pub fn shapes(self) -> Vec<Shape> {
        match self {
            Pattern::K32 => vec![Shape::complete(3, 2)],
            Pattern::K23 => vec![Shape::complete(2, 3)],
            Pattern::TwoFourCyclesSharedRight => vec![
                Shape::from_cycles(3, 3, &[((0, 1), (0, 1)), ((1, 2), (1, 2))]),
                Shape::from_cycles(4, 3, &[((0, 1), (0, 1)), ((2, 3), (1, 2))]),
            ],
            Pattern::ThreeFourCyclesFourLeft => vec![
                Shape::from_cycles(3, 6, &[((0, 1), (0, 1)), ((0, 2), (2, 3)), ((1, 2), (4, 5))]),
                Shape::from_cycles(4, 6, &[((0, 1), (0, 1)), ((1, 2), (2, 3)), ((2, 3), (4, 5))]),
                Shape::from_cycles(4, 6, &[((0, 1), (0, 1)), ((1, 2), (2, 3)), ((1, 3), (4, 5))]),
            ],
        }
    }

    /// Number of copies of this pattern in `b` (sum over its shapes).
    pub fn occurrences(self, b: &BipartiteGraph) -> u64 {
        match self {
            Pattern::K32 => {
                let mut total = 0;
                for i1 in 0..b.n_right() {
                    for i2 in i1 + 1..b.n_right() {
                        let c = intersect_sorted(b.right_neighbors(i1), b.right_neighbors(i2)).len();
                        total += choose3(c);
                    }
                }
                total
            }
            Pattern::K23 => {
                let mut total = 0;
                for j1 in 0..b.n_left() {
                    for j2 in j1 + 1..b.n_left() {
                        let c = intersect_sorted(b.left_neighbors(j1), b.left_neighbors(j2)).len();
                        total += choose3(c);
                    }
                }
                total
            }
            Pattern::TwoFourCyclesSharedRight => {
                let cycles = four_cycles(b);
                let mut total = 0;
                for (x, p) in cycles.iter().enumerate() {
                    for q in &cycles[x + 1..] {
                        if shared_right(p, q) == 1 && shared_left(p, q) <= 1 {
                            total += 1;
                        }
                    }
                }
                total
            }
            Pattern::ThreeFourCyclesFourLeft => {
                let cycles = four_cycles(b);
                let n = cycles.len();
                let mut total = 0;
                for x in 0..n {
                    for y in x + 1..n {
                        let (p, q) = (&cycles[x], &cycles[y]);
                        if shared_right(p, q) > 0 || p.left == q.left {
                            continue;
                        }
                        for s in &cycles[y + 1..] {
                            if shared_right(p, s) > 0
                                || shared_right(q, s) > 0
                                || s.left == p.left
                                || s.left == q.left
                            {
                                continue;
                            }
                            let mut lefts = vec![p.left.0, p.left.1, q.left.0, q.left.1, s.left.0, s.left.1];
                            lefts.sort_unstable();
                            lefts.dedup();
                            if lefts.len() <= 4 {
                                total += 1;
                            }
                        }
                    }
                }
                total
            }
        }
    }
}

fn choose3(c: usize) -> u64 {
    if c < 3 {
        0
    } else {
        (c * (c - 1) * (c - 2) / 6) as u64
    }
}

fn shared_right(p: &FourCycle, q: &FourCycle) -> usize {
    [p.right.0, p.right.1]
        .iter()
        .filter(|&&i| q.contains_right(i))
        .count()
}

fn shared_left(p: &FourCycle, q: &FourCycle) -> usize {
    [p.left.0, p.left.1]
        .iter()
        .filter(|&&j| q.contains_left(j))
        .count()
}

/// A small labelled bipartite graph `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub n_left: usize,
    pub n_right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Shape {
    pub fn complete(a: usize, b: usize) -> Self {
        Shape {
            n_left: a,
            n_right: b,
            edges: (0..a).flat_map(|j| (0..b).map(move |i| (j, i))).collect(),
        }
    }

    fn from_cycles(n_left: usize, n_right: usize, cycles: &[((usize, usize), (usize, usize))]) -> Self {
        let mut edges = Vec::new();
        for &((j1, j2), (i1, i2)) in cycles {
            for e in [(j1, i1), (j1, i2), (j2, i1), (j2, i2)] {
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        edges.sort_unstable();
        Shape { n_left, n_right, edges }
    }

    pub fn left_degrees(&self) -> Vec<u64> {
        let mut d = vec![0; self.n_left];
        for &(j, _) in &self.edges {
            d[j] += 1;
        }
        d
    }

    pub fn right_degrees(&self) -> Vec<u64> {
        let mut d = vec![0; self.n_right];
        for &(_, i) in &self.edges {
            d[i] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> u64 {
        self.left_degrees()
            .into_iter()
            .chain(self.right_degrees())
            .max()
            .unwrap_or(0)
    }

    /// Side-preserving automorphisms, by brute force over both vertex
    /// permutations.
    pub fn automorphisms(&self) -> u64 {
        let lefts = permutations(self.n_left);
        let rights = permutations(self.n_right);
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        let mut count = 0;
        for pl in &lefts {
            for pr in &rights {
                let mut mapped: Vec<_> = self.edges.iter().map(|&(j, i)| (pl[j], pr[i])).collect();
                mapped.sort_unstable();
                if mapped == edges {
                    count += 1;
                }
            }
        }
        count
    }

    /// Copies of this shape in `b` by brute force over injective vertex maps.
    pub fn count_copies_brute(&self, b: &BipartiteGraph) -> u64 {
        let lmaps = injections(self.n_left, b.n_left());
        let rmaps = injections(self.n_right, b.n_right());
        let mut hits = 0u64;
        for lm in &lmaps {
            for rm in &rmaps {
                if self.edges.iter().all(|&(j, i)| b.has_edge(lm[j], rm[i])) {
                    hits += 1;
                }
            }
        }
        hits / self.automorphisms()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    injections(n, n)
}

/// All injective maps `{0..k} -> {0..n}` as vectors.
pub(crate) fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(k, n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(k, n, &mut Vec::with_capacity(k), &mut vec![false; n], &mut out);
    }
    out
}
