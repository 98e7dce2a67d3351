//! Bipartite incidence graphs, hypergraphs, and the structural property
//! battery used to define the classes `B`, `B⁰`, `B⁺` and `C_d`.
//!
//! Left vertices `v_1..v_n` are hypergraph vertices, right vertices
//! `e_1..e_m` are hyperedges. Indices are 0-based in memory and 1-based in
//! every JSON form.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degree::DegreeSequence;
use crate::error::{Error, Result};

/// A vertex on either side of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Left(usize),
    Right(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraphJson {
    pub n_left: usize,
    pub n_right: usize,
    /// `[j, i]` pairs, 1-based: left vertex `v_j` adjacent to right vertex `e_i`.
    pub edges: Vec<[usize; 2]>,
}

impl BipartiteGraph {
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        BipartiteGraph {
            n_left,
            n_right,
            left: vec![Vec::new(); n_left],
            right: vec![Vec::new(); n_right],
        }
    }

    /// Builds a graph from 0-based `(left, right)` pairs. Duplicate or
    /// out-of-range pairs are rejected.
    pub fn from_edges<I>(n_left: usize, n_right: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n_left, n_right);
        for (j, i) in edges {
            if j >= n_left || i >= n_right {
                return Err(Error::InvalidInput(format!(
                    "edge (v{}, e{}) out of range for a {n_left}+{n_right} graph",
                    j + 1,
                    i + 1
                )));
            }
            if !g.insert_edge(j, i) {
                return Err(Error::InvalidInput(format!(
                    "multi-edge (v{}, e{})",
                    j + 1,
                    i + 1
                )));
            }
        }
        Ok(g)
    }

    /// Builds a graph whose right vertex `e_i` has neighbourhood `columns[i]`,
    /// given as a bitmask over left vertices.
    pub fn from_column_masks(n_left: usize, columns: &[u64]) -> Self {
        debug_assert!(n_left <= 64);
        let mut left = vec![Vec::new(); n_left];
        let mut right = Vec::with_capacity(columns.len());
        for (i, &mask) in columns.iter().enumerate() {
            let mut nbrs = Vec::with_capacity(mask.count_ones() as usize);
            let mut bits = mask;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                nbrs.push(j as u32);
                left[j].push(i as u32);
            }
            right.push(nbrs);
        }
        BipartiteGraph {
            n_left,
            n_right: columns.len(),
            left,
            right,
        }
    }

    /// Builds a graph whose left vertex `v_j` has neighbourhood `rows[j]`,
    /// given as a bitmask over right vertices.
    pub fn from_row_masks(n_right: usize, rows: &[u64]) -> Self {
        debug_assert!(n_right <= 64);
        let mut right = vec![Vec::new(); n_right];
        let mut left = Vec::with_capacity(rows.len());
        for (j, &mask) in rows.iter().enumerate() {
            let mut nbrs = Vec::with_capacity(mask.count_ones() as usize);
            let mut bits = mask;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                nbrs.push(i as u32);
                right[i].push(j as u32);
            }
            left.push(nbrs);
        }
        BipartiteGraph {
            n_left: rows.len(),
            n_right,
            left,
            right,
        }
    }

    pub fn from_json(json: &BipartiteGraphJson) -> Result<Self> {
        let mut pairs = Vec::with_capacity(json.edges.len());
        for &[j, i] in &json.edges {
            if j == 0 || i == 0 {
                return Err(Error::InvalidInput(
                    "graph JSON indices are 1-based".to_string(),
                ));
            }
            pairs.push((j - 1, i - 1));
        }
        Self::from_edges(json.n_left, json.n_right, pairs)
    }

    pub fn to_json(&self) -> BipartiteGraphJson {
        BipartiteGraphJson {
            n_left: self.n_left,
            n_right: self.n_right,
            edges: self.edges().map(|(j, i)| [j + 1, i + 1]).collect(),
        }
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn left_neighbors(&self, j: usize) -> &[u32] {
        &self.left[j]
    }

    pub fn right_neighbors(&self, i: usize) -> &[u32] {
        &self.right[i]
    }

    pub fn neighbors(&self, x: Vertex) -> &[u32] {
        match x {
            Vertex::Left(j) => &self.left[j],
            Vertex::Right(i) => &self.right[i],
        }
    }

    pub fn has_edge(&self, j: usize, i: usize) -> bool {
        self.left[j].binary_search(&(i as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.left.iter().map(Vec::len).sum()
    }

    /// All edges as `(left, right)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left
            .iter()
            .enumerate()
            .flat_map(|(j, nbrs)| nbrs.iter().map(move |&i| (j, i as usize)))
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        self.left.iter().map(Vec::len).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        self.right.iter().map(Vec::len).collect()
    }

    /// Neighbourhood of `e_i` as a bitmask (requires `n_left <= 64`).
    pub fn column_mask(&self, i: usize) -> u64 {
        self.right[i].iter().fold(0u64, |acc, &j| acc | (1u64 << j))
    }

    /// Checks left degrees equal `k`, every right degree equals `r`, and
    /// `m = M / r`.
    pub fn check_conforms(&self, ds: &DegreeSequence) -> Result<()> {
        let k = ds.degrees();
        if k.len() != self.n_left {
            return Err(Error::NonConforming(format!(
                "{} left vertices, degree sequence has {}",
                self.n_left,
                k.len()
            )));
        }
        let m = ds.edge_count()?;
        if m as usize != self.n_right {
            return Err(Error::NonConforming(format!(
                "{} right vertices, expected M/r = {m}",
                self.n_right
            )));
        }
        for (j, nbrs) in self.left.iter().enumerate() {
            if nbrs.len() as u64 != k[j] {
                return Err(Error::NonConforming(format!(
                    "v{} has degree {}, expected {}",
                    j + 1,
                    nbrs.len(),
                    k[j]
                )));
            }
        }
        for (i, nbrs) in self.right.iter().enumerate() {
            if nbrs.len() as u64 != ds.r() {
                return Err(Error::NonConforming(format!(
                    "e{} has degree {}, expected r = {}",
                    i + 1,
                    nbrs.len(),
                    ds.r()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn insert_edge(&mut self, j: usize, i: usize) -> bool {
        match self.left[j].binary_search(&(i as u32)) {
            Ok(_) => false,
            Err(pos) => {
                self.left[j].insert(pos, i as u32);
                let rpos = self.right[i].binary_search(&(j as u32)).unwrap_err();
                self.right[i].insert(rpos, j as u32);
                true
            }
        }
    }

    pub(crate) fn remove_edge(&mut self, j: usize, i: usize) -> bool {
        match self.left[j].binary_search(&(i as u32)) {
            Ok(pos) => {
                self.left[j].remove(pos);
                let rpos = self.right[i].binary_search(&(j as u32)).unwrap();
                self.right[i].remove(rpos);
                true
            }
            Err(_) => false,
        }
    }
}

/// A hypergraph on vertex set `{0..n}`; each edge is a sorted vertex list
/// where repeats represent loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(edges.len());
        for (idx, mut e) in edges.into_iter().enumerate() {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInput(format!(
                    "edge {} mentions vertex {} outside 1..={n}",
                    idx + 1,
                    v + 1
                )));
            }
            e.sort_unstable();
            sorted.push(e);
        }
        Ok(Hypergraph { n, edges: sorted })
    }

    pub fn from_json(json: &HypergraphJson) -> Result<Self> {
        let mut edges = Vec::with_capacity(json.edges.len());
        for e in &json.edges {
            if e.contains(&0) {
                return Err(Error::InvalidInput(
                    "hypergraph JSON indices are 1-based".to_string(),
                ));
            }
            edges.push(e.iter().map(|v| v - 1).collect());
        }
        Self::new(json.n, edges)
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| e.iter().map(|v| v + 1).collect())
                .collect(),
        }
    }

    /// Vertex degrees, counting multiplicity.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Multiset equality of edges.
    pub fn same_edges(&self, other: &Hypergraph) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort();
        b.sort();
        a == b
    }
}

/// A copy of `K_{2,2}`: left pair `{j1, j2}` with `j1 < j2`, right pair
/// `{i1, i2}` with `i1 < i2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourCycle {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl FourCycle {
    pub fn contains_left(&self, j: usize) -> bool {
        self.left.0 == j || self.left.1 == j
    }

    pub fn contains_right(&self, i: usize) -> bool {
        self.right.0 == i || self.right.1 == i
    }

    pub fn contains(&self, x: Vertex) -> bool {
        match x {
            Vertex::Left(j) => self.contains_left(j),
            Vertex::Right(i) => self.contains_right(i),
        }
    }
}

/// The five structural properties defining `B⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Property {
    /// No copy of `K_{3,2}` (three left, two right).
    #[serde(rename = "i")]
    NoK32,
    /// No copy of `K_{2,3}`.
    #[serde(rename = "ii")]
    NoK23,
    /// No right vertex lies on two 4-cycles.
    #[serde(rename = "iii")]
    RightDisjointCycles,
    /// Any three 4-cycles span at least five left vertices.
    #[serde(rename = "iv")]
    SpreadTriples,
    /// At most `N_2` 4-cycles.
    #[serde(rename = "v")]
    FewCycles,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::NoK32 => "i",
            Property::NoK23 => "ii",
            Property::RightDisjointCycles => "iii",
            Property::SpreadTriples => "iv",
            Property::FewCycles => "v",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub four_cycles: Vec<FourCycle>,
    pub d: usize,
    pub in_b0: bool,
    pub in_bplus: bool,
    pub failed_properties: Vec<Property>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FourCycleJson {
    pub left: [usize; 2],
    pub right: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationJson {
    pub d: usize,
    pub four_cycles: Vec<FourCycleJson>,
    pub in_b0: bool,
    pub in_bplus: bool,
    pub failed_properties: Vec<Property>,
}

impl Classification {
    pub fn to_json(&self) -> ClassificationJson {
        ClassificationJson {
            d: self.d,
            four_cycles: self
                .four_cycles
                .iter()
                .map(|c| FourCycleJson {
                    left: [c.left.0 + 1, c.left.1 + 1],
                    right: [c.right.0 + 1, c.right.1 + 1],
                })
                .collect(),
            in_b0: self.in_b0,
            in_bplus: self.in_bplus,
            failed_properties: self.failed_properties.clone(),
        }
    }

    /// Membership in `C_d` for the given `d`.
    pub fn in_class(&self, d: usize) -> bool {
        self.in_bplus && self.d == d
    }
}

/// Reads off the hypergraph whose edge `i` is the neighbourhood of `e_i`.
pub fn to_hypergraph(b: &BipartiteGraph, r: usize) -> Result<Hypergraph> {
    let mut edges = Vec::with_capacity(b.n_right);
    for (i, nbrs) in b.right.iter().enumerate() {
        if nbrs.len() != r {
            return Err(Error::WrongRightDegree {
                vertex: i + 1,
                degree: nbrs.len(),
                r,
            });
        }
        edges.push(nbrs.iter().map(|&j| j as usize).collect());
    }
    Ok(Hypergraph {
        n: b.n_left,
        edges,
    })
}

/// Incidence graph of a loop-free hypergraph. Right vertices follow the
/// canonical edge order: lexicographic on sorted vertex lists, ties by
/// input position.
pub fn from_hypergraph(g: &Hypergraph) -> Result<BipartiteGraph> {
    for (idx, e) in g.edges.iter().enumerate() {
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::LoopPresent { edge: idx + 1 });
        }
    }
    let mut order: Vec<usize> = (0..g.edges.len()).collect();
    order.sort_by(|&a, &b| g.edges[a].cmp(&g.edges[b]));
    let mut b = BipartiteGraph::empty(g.n, g.edges.len());
    for (col, &idx) in order.iter().enumerate() {
        for &v in &g.edges[idx] {
            b.insert_edge(v, col);
        }
    }
    Ok(b)
}

/// For every pair of right vertices `(i1, i2)`, `i1 < i2`, with at least one
/// common neighbour, calls `f(i1, i2, common)` with the sorted common
/// neighbourhood.
fn for_each_right_pair_common<F>(b: &BipartiteGraph, mut f: F)
where
    F: FnMut(usize, usize, &[u32]),
{
    let mut common: Vec<Vec<u32>> = vec![Vec::new(); b.n_right];
    let mut touched: Vec<usize> = Vec::new();
    for i1 in 0..b.n_right {
        for &j in &b.right[i1] {
            for &i2 in &b.left[j as usize] {
                let i2 = i2 as usize;
                if i2 <= i1 {
                    continue;
                }
                if common[i2].is_empty() {
                    touched.push(i2);
                }
                common[i2].push(j);
            }
        }
        touched.sort_unstable();
        for &i2 in &touched {
            f(i1, i2, &common[i2]);
            common[i2].clear();
        }
        touched.clear();
    }
}

/// All copies of `K_{2,2}`, sorted by `(j1, j2, i1, i2)`.
pub fn four_cycles(b: &BipartiteGraph) -> Vec<FourCycle> {
    let mut out = Vec::new();
    for_each_right_pair_common(b, |i1, i2, common| {
        for (x, &j1) in common.iter().enumerate() {
            for &j2 in &common[x + 1..] {
                out.push(FourCycle {
                    left: (j1 as usize, j2 as usize),
                    right: (i1, i2),
                });
            }
        }
    });
    out.sort_unstable();
    out
}

/// Whether some `a` left and `b` right vertices span all `a * b` edges.
pub fn has_copy(g: &BipartiteGraph, a: usize, b: usize) -> bool {
    assert!(a >= 1 && b >= 1, "K_{{a,b}} needs a, b >= 1");
    fn extend(g: &BipartiteGraph, a: usize, b: usize, chosen: usize, last: usize, common: &[u32]) -> bool {
        if common.len() < a {
            return false;
        }
        if chosen == b {
            return true;
        }
        let mut candidates: BTreeSet<u32> = BTreeSet::new();
        for &j in common {
            for &i in &g.left[j as usize] {
                if i as usize > last {
                    candidates.insert(i);
                }
            }
        }
        for &i in &candidates {
            let next: Vec<u32> = intersect_sorted(common, &g.right[i as usize]);
            if extend(g, a, b, chosen + 1, i as usize, &next) {
                return true;
            }
        }
        false
    }
    (0..g.n_right).any(|i| {
        let common = g.right[i].clone();
        extend(g, a, b, 1, i, &common)
    })
}

pub(crate) fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[x]);
                x += 1;
                y += 1;
            }
        }
    }
    out
}

/// BFS distances from `x` to every vertex, `None` when unreachable.
/// Returns `(left distances, right distances)`.
pub fn distances_from(b: &BipartiteGraph, x: Vertex) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut dl = vec![None; b.n_left];
    let mut dr = vec![None; b.n_right];
    let mut queue = VecDeque::new();
    match x {
        Vertex::Left(j) => dl[j] = Some(0),
        Vertex::Right(i) => dr[i] = Some(0),
    }
    queue.push_back(x);
    while let Some(v) = queue.pop_front() {
        match v {
            Vertex::Left(j) => {
                let dist = dl[j].unwrap();
                for &i in &b.left[j] {
                    if dr[i as usize].is_none() {
                        dr[i as usize] = Some(dist + 1);
                        queue.push_back(Vertex::Right(i as usize));
                    }
                }
            }
            Vertex::Right(i) => {
                let dist = dr[i].unwrap();
                for &j in &b.right[i] {
                    if dl[j as usize].is_none() {
                        dl[j as usize] = Some(dist + 1);
                        queue.push_back(Vertex::Left(j as usize));
                    }
                }
            }
        }
    }
    (dl, dr)
}

/// Shortest-path length between `x` and `y`; `None` means unreachable.
pub fn distance(b: &BipartiteGraph, x: Vertex, y: Vertex) -> Option<usize> {
    if x == y {
        return Some(0);
    }
    let (dl, dr) = distances_from(b, x);
    match y {
        Vertex::Left(j) => dl[j],
        Vertex::Right(i) => dr[i],
    }
}

/// Evaluates properties (i)-(v) and `B⁰` membership on a conforming graph.
pub fn classify(b: &BipartiteGraph, ds: &DegreeSequence) -> Result<Classification> {
    b.check_conforms(ds)?;
    Ok(classify_unchecked(b, ds.n2_cap() as usize))
}

/// Property battery with an explicit `N_2`; the caller guarantees conformance.
pub fn classify_unchecked(b: &BipartiteGraph, n2: usize) -> Classification {
    let cycles = four_cycles(b);
    let d = cycles.len();

    let mut seen = HashSet::with_capacity(b.n_right);
    let in_b0 = b.right.iter().all(|nbrs| seen.insert(nbrs.as_slice()));

    let mut failed = Vec::new();
    if has_copy(b, 3, 2) {
        failed.push(Property::NoK32);
    }
    if has_copy(b, 2, 3) {
        failed.push(Property::NoK23);
    }
    let mut per_right = vec![0usize; b.n_right];
    for c in &cycles {
        per_right[c.right.0] += 1;
        per_right[c.right.1] += 1;
    }
    if per_right.iter().any(|&x| x >= 2) {
        failed.push(Property::RightDisjointCycles);
    }
    if has_crowded_triple(&cycles) {
        failed.push(Property::SpreadTriples);
    }
    if d > n2 {
        failed.push(Property::FewCycles);
    }
    Classification {
        in_bplus: failed.is_empty(),
        four_cycles: cycles,
        d,
        in_b0,
        failed_properties: failed,
    }
}

/// Three distinct 4-cycles on at most four left vertices.
fn has_crowded_triple(cycles: &[FourCycle]) -> bool {
    let n = cycles.len();
    for a in 0..n {
        for b in a + 1..n {
            let mut base = [cycles[a].left.0, cycles[a].left.1, cycles[b].left.0, cycles[b].left.1];
            base.sort_unstable();
            let base_len = 1 + base.windows(2).filter(|w| w[0] != w[1]).count();
            if base_len > 4 {
                continue;
            }
            for c in &cycles[b + 1..] {
                let extra = [c.left.0, c.left.1]
                    .iter()
                    .filter(|v| !base.contains(v))
                    .count();
                if base_len + extra <= 4 {
                    return true;
                }
            }
        }
    }
    false
}

/// Link and loop statistics of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperProperties {
    /// Number of (vertex, edge) pairs where the vertex repeats inside the edge.
    pub loops: usize,
    /// Edges minus distinct edges.
    pub repeated_edges: usize,
    pub max_link_multiplicity: usize,
    /// Links of multiplicity exactly two, as sorted 0-based pairs.
    pub double_links: Vec<(usize, usize)>,
    pub is_simple: bool,
    pub is_linear: bool,
}

fn link_multiplicities(g: &Hypergraph) -> BTreeMap<(usize, usize), usize> {
    let mut mult = BTreeMap::new();
    for e in &g.edges {
        let mut links = BTreeSet::new();
        for x in 0..e.len() {
            for y in x + 1..e.len() {
                links.insert((e[x], e[y]));
            }
        }
        for l in links {
            *mult.entry(l).or_insert(0) += 1;
        }
    }
    mult
}

fn edge_intersection(a: &[usize], b: &[usize]) -> usize {
    let a: BTreeSet<_> = a.iter().collect();
    let b: BTreeSet<_> = b.iter().collect();
    a.intersection(&b).count()
}

pub fn hyper_properties(g: &Hypergraph) -> HyperProperties {
    let loops: usize = g
        .edges
        .iter()
        .map(|e| {
            let mut count = 0;
            let mut x = 0;
            while x < e.len() {
                let mut y = x;
                while y < e.len() && e[y] == e[x] {
                    y += 1;
                }
                if y - x >= 2 {
                    count += 1;
                }
                x = y;
            }
            count
        })
        .sum();
    let distinct: BTreeSet<&Vec<usize>> = g.edges.iter().collect();
    let repeated_edges = g.edges.len() - distinct.len();
    let mult = link_multiplicities(g);
    let max_link_multiplicity = mult.values().copied().max().unwrap_or(0);
    let double_links = mult
        .iter()
        .filter(|(_, &c)| c == 2)
        .map(|(&l, _)| l)
        .collect();
    let mut pairwise_ok = true;
    'outer: for a in 0..g.edges.len() {
        for b in a + 1..g.edges.len() {
            if edge_intersection(&g.edges[a], &g.edges[b]) > 1 {
                pairwise_ok = false;
                break 'outer;
            }
        }
    }
    HyperProperties {
        loops,
        repeated_edges,
        max_link_multiplicity,
        double_links,
        is_simple: loops == 0 && repeated_edges == 0,
        is_linear: loops == 0 && pairwise_ok,
    }
}

/// Evaluates the hypergraph-side counterparts of properties (i)-(v)
/// directly on `g`, returning the ones that fail.
pub fn dual_failures(g: &Hypergraph, n2: usize) -> Vec<Property> {
    let props = hyper_properties(g);
    let mut failed = Vec::new();

    let mut wide = false;
    'outer: for a in 0..g.edges.len() {
        for b in a + 1..g.edges.len() {
            if edge_intersection(&g.edges[a], &g.edges[b]) > 2 {
                wide = true;
                break 'outer;
            }
        }
    }
    if wide {
        failed.push(Property::NoK32);
    }
    if props.max_link_multiplicity > 2 {
        failed.push(Property::NoK23);
    }

    let doubles = &props.double_links;
    let edge_has_two = g.edges.iter().any(|e| {
        doubles
            .iter()
            .filter(|(x, y)| e.contains(x) && e.contains(y))
            .count()
            > 1
    });
    if edge_has_two {
        failed.push(Property::RightDisjointCycles);
    }

    let mut per_vertex: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(x, y) in doubles {
        per_vertex.entry(x).or_default().push(y);
        per_vertex.entry(y).or_default().push(x);
    }
    let count = |v: usize| per_vertex.get(&v).map_or(0, Vec::len);
    let crowded = per_vertex.iter().any(|(_, partners)| {
        partners.len() >= 3 || (partners.len() == 2 && partners.iter().any(|&p| count(p) != 1))
    });
    if crowded {
        failed.push(Property::SpreadTriples);
    }
    if doubles.len() > n2 {
        failed.push(Property::FewCycles);
    }
    failed
}
