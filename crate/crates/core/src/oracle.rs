//! Exhaustive enumeration of every conforming bipartite graph (and every
//! simple hypergraph) for small degree sequences.
//!
//! Three independent searches live here:
//!
//! * [`enumerate_bigraphs`] walks labelled graphs column by column, visiting
//!   each one exactly once.
//! * [`census`] walks orbit representatives: lines on one side are chosen in
//!   non-decreasing order within each degree class and every representative
//!   is weighted by the number of labelled graphs it stands for. All class
//!   memberships are invariant under relabelling, so weighted totals equal
//!   labelled totals.
//! * [`count_hypergraphs`] backtracks directly over sets of distinct
//!   `r`-subsets, never touching the bipartite route.
//!
//! Root branches are distributed with rayon; totals are sums and do not
//! depend on the worker count.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::ln_factorial;
use crate::bigraph::{classify_unchecked, BipartiteGraph};
use crate::degree::{factorial_big, DegreeSequence};
use crate::error::{Error, Result};
use crate::pattern::Pattern;

/// Limits on instances the exhaustive searches will accept.
///
/// With `max_space` unset the fixed limits on `M` and `n` apply. With
/// `max_space` set, those limits are replaced by a bound on the estimated
/// number of search leaves (the pairing upper bound on `|B_r(k)|`, divided by
/// the symmetry factor the search exploits).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchGuard {
    pub max_degree_sum: u64,
    pub max_vertices: usize,
    pub max_space: Option<f64>,
}

impl Default for SearchGuard {
    fn default() -> Self {
        SearchGuard {
            max_degree_sum: 16,
            max_vertices: 10,
            max_space: None,
        }
    }
}

impl SearchGuard {
    pub fn with_max_space(max_space: f64) -> Self {
        SearchGuard {
            max_space: Some(max_space),
            ..Self::default()
        }
    }

    /// Whether the labelled searches accept `ds`.
    pub fn admits(&self, ds: &DegreeSequence) -> bool {
        ds.edge_count().is_ok() && self.admit(ds, log_pairing_bound(ds)).is_ok()
    }

    fn admit(&self, ds: &DegreeSequence, log_space: f64) -> Result<()> {
        match self.max_space {
            None => {
                if ds.total() > self.max_degree_sum {
                    return Err(Error::TooLarge(format!(
                        "M = {} exceeds the limit M <= {} (raise it with --max-space)",
                        ds.total(),
                        self.max_degree_sum
                    )));
                }
                if ds.n() > self.max_vertices {
                    return Err(Error::TooLarge(format!(
                        "n = {} exceeds the limit n <= {} (raise it with --max-space)",
                        ds.n(),
                        self.max_vertices
                    )));
                }
            }
            Some(limit) => {
                if log_space > limit.max(1.0).ln() {
                    return Err(Error::TooLarge(format!(
                        "estimated search space {:.3e} exceeds --max-space {limit:.3e}",
                        log_space.exp()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `ln` of the pairing-model upper bound `M! / ((r!)^m prod k_j!)` on `|B_r(k)|`.
pub fn log_pairing_bound(ds: &DegreeSequence) -> f64 {
    let m = (ds.total() / ds.r()) as f64;
    ln_factorial(ds.total()) - m * ln_factorial(ds.r())
        - ds.degrees().iter().map(|&k| ln_factorial(k)).sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassFilter {
    All,
    B0,
    BPlus,
    NoFourCycle,
}

fn prepare(ds: &DegreeSequence) -> Result<usize> {
    let m = ds.edge_count()? as usize;
    if ds.n() > 64 {
        return Err(Error::TooLarge(format!("n = {} exceeds 64 left vertices", ds.n())));
    }
    Ok(m)
}

/// Calls `f` with every `size`-subset of the bits of `pool`, as a mask.
fn for_each_subset<F: FnMut(u64)>(pool: u64, size: u32, mut f: F) {
    let positions: Vec<u32> = (0..64).filter(|b| pool >> b & 1 == 1).collect();
    let len = positions.len() as u32;
    if size > len {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    let expand = |c: u64| {
        let mut mask = 0u64;
        let mut bits = c;
        while bits != 0 {
            let b = bits.trailing_zeros();
            bits &= bits - 1;
            mask |= 1u64 << positions[b as usize];
        }
        mask
    };
    let mut c: u64 = (1u64 << size) - 1;
    let limit: u64 = if len == 64 { u64::MAX } else { 1u64 << len };
    loop {
        f(expand(c));
        // Gosper's hack: next larger integer with the same popcount.
        let lowest = c & c.wrapping_neg();
        let ripple = c.wrapping_add(lowest);
        if ripple == 0 {
            break;
        }
        c = (((ripple ^ c) >> 2) / lowest) | ripple;
        if len < 64 && c >= limit {
            break;
        }
    }
}

/// Candidate lines for the next position of a line-by-line search.
///
/// `residual[x]` is the outstanding degree of opposite-side vertex `x`,
/// `slots` the number of lines (including this one) that can still cover it,
/// `size` the degree of the line being placed.
fn line_candidates(residual: &[u64], slots: u64, size: u32) -> Option<(u64, u64, u32)> {
    let mut forced = 0u64;
    let mut available = 0u64;
    for (x, &need) in residual.iter().enumerate() {
        if need > slots {
            return None;
        }
        if need == slots && need > 0 {
            forced |= 1u64 << x;
        }
        if need > 0 {
            available |= 1u64 << x;
        }
    }
    let nf = forced.count_ones();
    if nf > size {
        return None;
    }
    Some((forced, available & !forced, size - nf))
}

fn apply_line(residual: &mut [u64], mask: u64, sign: bool) {
    let mut bits = mask;
    while bits != 0 {
        let x = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if sign {
            residual[x] -= 1;
        } else {
            residual[x] += 1;
        }
    }
}

struct LabeledSearch {
    n: usize,
    r: u32,
    m: usize,
    n2: usize,
    filter: ClassFilter,
    residual: Vec<u64>,
    columns: Vec<u64>,
}

impl LabeledSearch {
    fn new(ds: &DegreeSequence, m: usize, filter: ClassFilter) -> Self {
        LabeledSearch {
            n: ds.n(),
            r: ds.r() as u32,
            m,
            n2: ds.n2_cap() as usize,
            filter,
            residual: ds.degrees().to_vec(),
            columns: Vec::with_capacity(m),
        }
    }

    fn candidates(&self) -> Vec<u64> {
        let slots = (self.m - self.columns.len()) as u64;
        let mut out = Vec::new();
        if let Some((forced, pool, need)) = line_candidates(&self.residual, slots, self.r) {
            for_each_subset(pool, need, |extra| {
                let col = forced | extra;
                let ok = match self.filter {
                    ClassFilter::B0 => !self.columns.contains(&col),
                    ClassFilter::NoFourCycle => {
                        self.columns.iter().all(|&c| (c & col).count_ones() <= 1)
                    }
                    ClassFilter::All | ClassFilter::BPlus => true,
                };
                if ok {
                    out.push(col);
                }
            });
        }
        out
    }

    fn run<F: FnMut(&[u64])>(&mut self, visit: &mut F) {
        if self.columns.len() == self.m {
            if self.residual.iter().all(|&x| x == 0) {
                visit(&self.columns);
            }
            return;
        }
        for col in self.candidates() {
            apply_line(&mut self.residual, col, true);
            self.columns.push(col);
            self.run(visit);
            self.columns.pop();
            apply_line(&mut self.residual, col, false);
        }
    }

    fn accepts(&self, columns: &[u64]) -> bool {
        match self.filter {
            ClassFilter::BPlus => {
                let g = BipartiteGraph::from_column_masks(self.n, columns);
                classify_unchecked(&g, self.n2).in_bplus
            }
            _ => true,
        }
    }
}

/// Visits every labelled conforming graph passing `filter` exactly once and
/// returns how many were visited.
pub fn enumerate_bigraphs<F>(
    ds: &DegreeSequence,
    filter: ClassFilter,
    guard: &SearchGuard,
    mut visitor: F,
) -> Result<u128>
where
    F: FnMut(&BipartiteGraph),
{
    let m = prepare(ds)?;
    guard.admit(ds, log_pairing_bound(ds))?;
    let mut search = LabeledSearch::new(ds, m, filter);
    let n = ds.n();
    let n2 = search.n2;
    let mut count = 0u128;
    search.run(&mut |cols: &[u64]| {
        let g = BipartiteGraph::from_column_masks(n, cols);
        if filter == ClassFilter::BPlus && !classify_unchecked(&g, n2).in_bplus {
            return;
        }
        count += 1;
        visitor(&g);
    });
    Ok(count)
}

/// Parallel count of labelled conforming graphs passing `filter`.
pub fn count_bigraphs(ds: &DegreeSequence, filter: ClassFilter, guard: &SearchGuard) -> Result<u128> {
    let m = prepare(ds)?;
    guard.admit(ds, log_pairing_bound(ds))?;
    if m == 0 {
        return Ok(u128::from(ds.total() == 0));
    }
    let root = LabeledSearch::new(ds, m, filter);
    let roots = root.candidates();
    Ok(roots
        .par_iter()
        .map(|&col| {
            let mut s = LabeledSearch::new(ds, m, filter);
            apply_line(&mut s.residual, col, true);
            s.columns.push(col);
            let mut count = 0u128;
            let mut leaves = Vec::new();
            s.run(&mut |cols: &[u64]| leaves.push(cols.to_vec()));
            for cols in leaves {
                if s.accepts(&cols) {
                    count += 1;
                }
            }
            count
        })
        .sum())
}

/// Which side's lines the orbit sweep places one by one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Right vertices (all of degree `r`); symmetry group `S_m`.
    Columns,
    /// Left vertices, grouped by degree; symmetry group `prod S_{class}`.
    Rows,
}

fn log_group_order(ds: &DegreeSequence, side: Side) -> f64 {
    match side {
        Side::Columns => ln_factorial(ds.total() / ds.r()),
        Side::Rows => {
            let mut sorted = ds.degrees().to_vec();
            sorted.sort_unstable();
            sorted
                .chunk_by(|a, b| a == b)
                .map(|c| ln_factorial(c.len() as u64))
                .sum()
        }
    }
}

/// The side with the larger symmetry group (fewer representatives).
pub fn preferred_side(ds: &DegreeSequence) -> Side {
    let m = ds.total() / ds.r();
    if m > 64 {
        return Side::Columns;
    }
    if ds.n() > 64 {
        return Side::Rows;
    }
    if log_group_order(ds, Side::Rows) > log_group_order(ds, Side::Columns) {
        Side::Rows
    } else {
        Side::Columns
    }
}

struct OrbitSearch {
    side: Side,
    /// Number of opposite-side vertices (mask width).
    width: usize,
    /// Degree of each line to place, in placement order.
    sizes: Vec<u32>,
    /// Index of the previous line in the same degree class.
    prev_same: Vec<Option<usize>>,
    /// Lines with positive size at or after each position.
    positive_after: Vec<u64>,
    /// Size-1 lines and lines of size at least 2 at or after each position.
    single_after: Vec<u64>,
    multi_after: Vec<u64>,
    /// Last size-1 position strictly before each position.
    last_single_before: Vec<Option<usize>>,
    residual: Vec<u64>,
    lines: Vec<u64>,
    /// `prod |class|!` over degree classes.
    class_factor: BigUint,
}

impl OrbitSearch {
    fn new(ds: &DegreeSequence, m: usize, side: Side) -> Self {
        let (width, sizes, residual): (usize, Vec<u32>, Vec<u64>) = match side {
            Side::Columns => (ds.n(), vec![ds.r() as u32; m], ds.degrees().to_vec()),
            Side::Rows => (
                m,
                ds.degrees().iter().map(|&k| k as u32).collect(),
                vec![ds.r(); m],
            ),
        };
        let mut prev_same = vec![None; sizes.len()];
        let mut last_of: std::collections::HashMap<u32, usize> = Default::default();
        for (p, &s) in sizes.iter().enumerate() {
            prev_same[p] = last_of.insert(s, p);
        }
        let mut positive_after = vec![0u64; sizes.len() + 1];
        for p in (0..sizes.len()).rev() {
            positive_after[p] = positive_after[p + 1] + u64::from(sizes[p] > 0);
        }
        let mut single_after = vec![0u64; sizes.len() + 1];
        let mut multi_after = vec![0u64; sizes.len() + 1];
        for p in (0..sizes.len()).rev() {
            single_after[p] = single_after[p + 1] + u64::from(sizes[p] == 1);
            multi_after[p] = multi_after[p + 1] + u64::from(sizes[p] >= 2);
        }
        let mut last_single_before = vec![None; sizes.len() + 1];
        for p in 1..=sizes.len() {
            last_single_before[p] = if sizes[p - 1] == 1 { Some(p - 1) } else { last_single_before[p - 1] };
        }
        let mut class_sizes: std::collections::BTreeMap<u32, u64> = Default::default();
        for &s in &sizes {
            *class_sizes.entry(s).or_default() += 1;
        }
        let class_factor = class_sizes
            .values()
            .fold(BigUint::from(1u32), |acc, &c| acc * factorial_big(c));
        OrbitSearch {
            side,
            width,
            sizes: sizes.clone(),
            prev_same,
            positive_after,
            single_after,
            multi_after,
            last_single_before,
            residual,
            lines: Vec::with_capacity(sizes.len()),
            class_factor,
        }
    }

    fn candidates(&self) -> Vec<u64> {
        let p = self.lines.len();
        let size = self.sizes[p];
        let floor = self.prev_same[p].map_or(0, |q| self.lines[q]);
        let mut out = Vec::new();
        if size == 0 {
            // Later positive lines must still be able to cover every residual.
            if self.residual.iter().all(|&x| x <= self.positive_after[p + 1]) {
                out.push(0);
            }
            return out;
        }
        let slots = self.positive_after[p];
        if let Some((forced, pool, need)) = line_candidates(&self.residual, slots, size) {
            for_each_subset(pool, need, |extra| {
                let line = forced | extra;
                if line >= floor && self.can_finish(line) {
                    out.push(line);
                }
            });
        }
        out
    }

    /// Whether the residual left by placing `line` next can still be covered.
    /// Later size-1 lines cannot go below the last one placed.
    fn can_finish(&self, line: u64) -> bool {
        let p = self.lines.len();
        let floor_bit = if self.sizes[p] == 1 {
            line.trailing_zeros() as usize
        } else {
            self.last_single_before[p].map_or(0, |q| self.lines[q].trailing_zeros() as usize)
        };
        let (singles, multis) = (self.single_after[p + 1], self.multi_after[p + 1]);
        self.residual.iter().enumerate().all(|(j, &x)| {
            let left = x - (line >> j & 1);
            left <= multis + if j >= floor_bit { singles } else { 0 }
        })
    }

    fn weight(&self) -> BigUint {
        let mut keyed: Vec<(u32, u64)> = self.sizes.iter().copied().zip(self.lines.iter().copied()).collect();
        keyed.sort_unstable();
        let mut denom = BigUint::from(1u32);
        for run in keyed.chunk_by(|a, b| a == b) {
            if run.len() > 1 {
                denom *= factorial_big(run.len() as u64);
            }
        }
        &self.class_factor / denom
    }

    fn graph(&self) -> BipartiteGraph {
        match self.side {
            Side::Columns => BipartiteGraph::from_column_masks(self.width, &self.lines),
            Side::Rows => BipartiteGraph::from_row_masks(self.width, &self.lines),
        }
    }

    fn run<A, F>(&mut self, acc: &mut A, visit: &F)
    where
        F: Fn(&mut A, &BipartiteGraph, &BigUint),
    {
        if self.lines.len() == self.sizes.len() {
            if self.residual.iter().all(|&x| x == 0) {
                visit(acc, &self.graph(), &self.weight());
            }
            return;
        }
        for line in self.candidates() {
            apply_line(&mut self.residual, line, true);
            self.lines.push(line);
            self.run(acc, visit);
            self.lines.pop();
            apply_line(&mut self.residual, line, false);
        }
    }
}

/// Weighted sweep over orbit representatives on the given side. `visit`
/// receives each representative and the number of labelled graphs in its
/// orbit; per-branch accumulators are merged with `merge`.
pub fn orbit_sweep<A, I, F, G>(
    ds: &DegreeSequence,
    guard: &SearchGuard,
    side: Side,
    init: I,
    visit: F,
    merge: G,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &BipartiteGraph, &BigUint) + Sync,
    G: Fn(A, A) -> A + Sync,
{
    let m = ds.edge_count()? as usize;
    let width = match side {
        Side::Columns => ds.n(),
        Side::Rows => m,
    };
    if width > 64 {
        return Err(Error::TooLarge(format!(
            "{width} vertices on the masked side exceeds 64"
        )));
    }
    guard.admit(ds, log_pairing_bound(ds) - log_group_order(ds, side))?;

    let root = OrbitSearch::new(ds, m, side);
    if root.sizes.is_empty() {
        let mut acc = init();
        if root.residual.iter().all(|&x| x == 0) {
            visit(&mut acc, &root.graph(), &BigUint::from(1u32));
        }
        return Ok(acc);
    }
    let first = root.candidates();
    let partials: Vec<A> = first
        .par_iter()
        .map(|&line| {
            let mut s = OrbitSearch::new(ds, m, side);
            apply_line(&mut s.residual, line, true);
            s.lines.push(line);
            let mut acc = init();
            s.run(&mut acc, &visit);
            acc
        })
        .collect();
    Ok(partials.into_iter().fold(init(), &merge))
}

/// Weighted class sizes for one degree sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub count_b: BigUint,
    pub count_b0: BigUint,
    pub count_bplus: BigUint,
    /// `|C_d|` for `d = 0..=N_2`.
    pub cd_profile: Vec<BigUint>,
}

impl Census {
    fn empty(len: usize) -> Self {
        Census {
            count_b: BigUint::zero(),
            count_b0: BigUint::zero(),
            count_bplus: BigUint::zero(),
            cd_profile: vec![BigUint::zero(); len],
        }
    }

    fn merge(mut self, other: Census) -> Census {
        self.count_b += other.count_b;
        self.count_b0 += other.count_b0;
        self.count_bplus += other.count_bplus;
        for (a, b) in self.cd_profile.iter_mut().zip(other.cd_profile) {
            *a += b;
        }
        self
    }
}

pub fn census_on(ds: &DegreeSequence, guard: &SearchGuard, side: Side) -> Result<Census> {
    let n2 = ds.n2_cap() as usize;
    orbit_sweep(
        ds,
        guard,
        side,
        || Census::empty(n2 + 1),
        |acc, g, w| {
            let cls = classify_unchecked(g, n2);
            acc.count_b += w;
            if cls.in_b0 {
                acc.count_b0 += w;
            }
            if cls.in_bplus {
                acc.count_bplus += w;
                acc.cd_profile[cls.d] += w;
            }
        },
        Census::merge,
    )
}

/// `|B|`, `|B⁰|`, `|B⁺|` and the `|C_d|` profile, on the cheaper side.
pub fn census(ds: &DegreeSequence, guard: &SearchGuard) -> Result<Census> {
    census_on(ds, guard, preferred_side(ds))
}

struct HyperSearch {
    r: u32,
    m: usize,
    residual: Vec<u64>,
    edges: Vec<u64>,
}

impl HyperSearch {
    fn candidates(&self) -> Vec<u64> {
        let slots = (self.m - self.edges.len()) as u64;
        let floor = self.edges.last().map_or(0, |&e| e + 1);
        let mut out = Vec::new();
        if let Some((forced, pool, need)) = line_candidates(&self.residual, slots, self.r) {
            for_each_subset(pool, need, |extra| {
                let e = forced | extra;
                if e >= floor {
                    out.push(e);
                }
            });
        }
        out
    }

    fn run(&mut self, linear: bool, counts: &mut (u128, u128)) {
        if self.edges.len() == self.m {
            if self.residual.iter().all(|&x| x == 0) {
                counts.0 += 1;
                if linear {
                    counts.1 += 1;
                }
            }
            return;
        }
        for e in self.candidates() {
            let still_linear = linear && self.edges.iter().all(|&f| (f & e).count_ones() <= 1);
            apply_line(&mut self.residual, e, true);
            self.edges.push(e);
            self.run(still_linear, counts);
            self.edges.pop();
            apply_line(&mut self.residual, e, false);
        }
    }
}

/// `(|H_r(k)|, |L_r(k)|)` by backtracking over increasing sequences of
/// distinct `r`-subsets of `[n]`.
pub fn count_hypergraphs(ds: &DegreeSequence, guard: &SearchGuard) -> Result<(u128, u128)> {
    let m = prepare(ds)?;
    guard.admit(ds, log_pairing_bound(ds) - ln_factorial(m as u64))?;
    let fresh = || HyperSearch {
        r: ds.r() as u32,
        m,
        residual: ds.degrees().to_vec(),
        edges: Vec::with_capacity(m),
    };
    if m == 0 {
        let ok = u128::from(ds.total() == 0);
        return Ok((ok, ok));
    }
    let roots = fresh().candidates();
    Ok(roots
        .par_iter()
        .map(|&e| {
            let mut s = fresh();
            apply_line(&mut s.residual, e, true);
            s.edges.push(e);
            let mut counts = (0, 0);
            s.run(true, &mut counts);
            counts
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub count_b: BigUint,
    pub count_b0: BigUint,
    pub count_bplus: BigUint,
    pub count_h: BigUint,
    pub count_l: BigUint,
    pub cd_profile: Vec<BigUint>,
}

/// JSON form with every count as a decimal string.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReportJson {
    pub r: u64,
    pub k: Vec<u64>,
    pub count_b: String,
    pub count_b0: String,
    pub count_bplus: String,
    pub count_h: String,
    pub count_l: String,
    pub cd_profile: Vec<String>,
}

impl OracleReport {
    pub fn to_json(&self, ds: &DegreeSequence) -> OracleReportJson {
        OracleReportJson {
            r: ds.r(),
            k: ds.degrees().to_vec(),
            count_b: self.count_b.to_string(),
            count_b0: self.count_b0.to_string(),
            count_bplus: self.count_bplus.to_string(),
            count_h: self.count_h.to_string(),
            count_l: self.count_l.to_string(),
            cd_profile: self.cd_profile.iter().map(ToString::to_string).collect(),
        }
    }

    /// Checks the four identities tying the bipartite counts to the
    /// hypergraph counts.
    pub fn check_identities(&self, ds: &DegreeSequence) -> Result<()> {
        let m = ds.edge_count()?;
        let mfact = factorial_big(m);
        let mut broken = Vec::new();
        if self.count_b0 != &mfact * &self.count_h {
            broken.push(format!(
                "(M/r)! |H| = {} but |B0| = {}",
                &mfact * &self.count_h,
                self.count_b0
            ));
        }
        let sum: BigUint = self.cd_profile.iter().sum();
        if sum != self.count_bplus {
            broken.push(format!("sum |C_d| = {sum} but |B+| = {}", self.count_bplus));
        }
        let c0 = self.cd_profile.first().cloned().unwrap_or_default();
        if &mfact * &self.count_l != c0 {
            broken.push(format!("(M/r)! |L| = {} but |C_0| = {c0}", &mfact * &self.count_l));
        }
        if self.count_l > self.count_h
            || self.count_bplus > self.count_b0
            || self.count_b0 > self.count_b
        {
            broken.push("class sizes are not nested".to_string());
        }
        if broken.is_empty() {
            Ok(())
        } else {
            Err(Error::InvariantViolation(broken.join("; ")))
        }
    }
}

/// All exact counts for one instance, with the identities checked before
/// returning.
pub fn full_report(ds: &DegreeSequence, guard: &SearchGuard) -> Result<OracleReport> {
    let c = census(ds, guard)?;
    let (h, l) = count_hypergraphs(ds, guard)?;
    let report = OracleReport {
        count_b: c.count_b,
        count_b0: c.count_b0,
        count_bplus: c.count_bplus,
        count_h: BigUint::from(h),
        count_l: BigUint::from(l),
        cd_profile: c.cd_profile,
    };
    report.check_identities(ds)?;
    Ok(report)
}

/// Exact expected number of copies of `pattern` in a uniform element of
/// `B_r(k)`.
pub fn pattern_expectation(
    ds: &DegreeSequence,
    pattern: Pattern,
    guard: &SearchGuard,
) -> Result<BigRational> {
    let (total, graphs) = orbit_sweep(
        ds,
        guard,
        preferred_side(ds),
        || (BigUint::zero(), BigUint::zero()),
        |acc, g, w| {
            let occ = pattern.occurrences(g);
            if occ > 0 {
                acc.0 += w * BigUint::from(occ);
            }
            acc.1 += w;
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )?;
    if graphs.is_zero() {
        return Err(Error::EmptyClass);
    }
    Ok(BigRational::new(total.into(), graphs.into()))
}

/// `|C_1| / |C_0|` as a float, `None` when `|C_0| = 0`.
pub fn c1_over_c0(c: &Census) -> Option<f64> {
    let c0 = c.cd_profile.first()?;
    if c0.is_zero() {
        return None;
    }
    let c1 = c.cd_profile.get(1).cloned().unwrap_or_default();
    let q = BigRational::new(c1.into(), c0.clone().into());
    q.to_f64()
}

/// Every non-increasing sequence of length `1..=max_n` with entries in
/// `1..=k_max`, paired with each `r` in `rs` that divides its sum.
pub fn battery(max_n: usize, rs: &[u64], k_max: u64) -> Vec<DegreeSequence> {
    fn extend(prefix: &mut Vec<u64>, max_n: usize, ceiling: u64, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_n {
            return;
        }
        for x in (1..=ceiling).rev() {
            prefix.push(x);
            extend(prefix, max_n, x, out);
            prefix.pop();
        }
    }
    let mut seqs = Vec::new();
    extend(&mut Vec::new(), max_n, k_max, &mut seqs);
    let mut out = Vec::new();
    for &r in rs {
        for k in &seqs {
            if k.iter().sum::<u64>() % r == 0 {
                out.push(DegreeSequence::from_unsigned(k.clone(), r));
            }
        }
    }
    out
}

/// `count` random instances with `n <= max_n`, entries in `0..=k_max` (in
/// any order), `r` drawn from `rs`, `r | M`, and accepted by `guard`.
pub fn random_instances<R: rand::Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    max_n: usize,
    rs: &[u64],
    k_max: u64,
    guard: &SearchGuard,
) -> Vec<DegreeSequence> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=max_n);
        let k: Vec<u64> = (0..n).map(|_| rng.random_range(0..=k_max)).collect();
        let r = rs[rng.random_range(0..rs.len())];
        let ds = DegreeSequence::from_unsigned(k, r);
        if guard.admits(&ds) {
            out.push(ds);
        }
    }
    out
}
