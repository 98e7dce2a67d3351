//! Switchings that remove or create one 4-cycle, their legality analysis,
//! the pairing-model sampler and a Monte Carlo estimate of the probability
//! of having no 4-cycle.
//!
//! Legality is always decided by applying the switching and reclassifying
//! the result. The listed conditions are necessary for illegality, not
//! sufficient, and are reported as explanations only. The distance clause
//! for the forward direction uses the pair `(u_j, g_j)` for each `j`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::girth6_probability;
use crate::bigraph::{classify_unchecked, distances_from, four_cycles, BipartiteGraph, Vertex};
use crate::degree::DegreeSequence;
use crate::error::{Error, Result};

/// `(u1, u2, w1, w2)` are left vertices, `(f1, f2, g1, g2)` right vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SwitchTuple {
    pub u1: usize,
    pub u2: usize,
    pub w1: usize,
    pub w2: usize,
    pub f1: usize,
    pub f2: usize,
    pub g1: usize,
    pub g2: usize,
}

fn all_distinct(xs: &[usize]) -> bool {
    xs.iter().enumerate().all(|(a, x)| !xs[a + 1..].contains(x))
}

impl SwitchTuple {
    /// All four left entries distinct and all four right entries distinct.
    pub fn is_suitable(&self) -> bool {
        all_distinct(&[self.u1, self.u2, self.w1, self.w2])
            && all_distinct(&[self.f1, self.f2, self.g1, self.g2])
    }

    fn in_range(&self, b: &BipartiteGraph) -> bool {
        [self.u1, self.u2, self.w1, self.w2].iter().all(|&j| j < b.n_left())
            && [self.f1, self.f2, self.g1, self.g2].iter().all(|&i| i < b.n_right())
    }

    /// Edges removed by the forward switching.
    fn forward_removed(&self) -> [(usize, usize); 4] {
        [(self.u1, self.f1), (self.u2, self.f2), (self.w1, self.g1), (self.w2, self.g2)]
    }

    /// Edges added by the forward switching.
    fn forward_added(&self) -> [(usize, usize); 4] {
        [(self.u1, self.g1), (self.u2, self.g2), (self.w1, self.f1), (self.w2, self.f2)]
    }
}

fn check_shape(b: &BipartiteGraph, t: &SwitchTuple) -> Result<()> {
    if !t.in_range(b) {
        return Err(Error::NotASwitching("vertex index out of range".into()));
    }
    if !t.is_suitable() {
        return Err(Error::NotASwitching("the eight vertices are not distinct".into()));
    }
    Ok(())
}

fn require(b: &BipartiteGraph, edges: &[(usize, usize)], present: bool) -> Result<()> {
    for &(j, i) in edges {
        if b.has_edge(j, i) != present {
            let what = if present { "missing" } else { "already present" };
            return Err(Error::NotASwitching(format!("edge v{}e{} is {what}", j + 1, i + 1)));
        }
    }
    Ok(())
}

fn rewire(b: &BipartiteGraph, remove: &[(usize, usize)], add: &[(usize, usize)]) -> BipartiteGraph {
    let mut out = b.clone();
    for &(j, i) in remove {
        out.remove_edge(j, i);
    }
    for &(j, i) in add {
        out.insert_edge(j, i);
    }
    out
}

/// The forward switching: removes the 4-cycle on `{u1,u2} x {f1,f2}` by
/// trading `u1f1, u2f2, w1g1, w2g2` for `u1g1, u2g2, w1f1, w2f2`.
pub fn apply_forward(b: &BipartiteGraph, t: &SwitchTuple) -> Result<BipartiteGraph> {
    check_shape(b, t)?;
    require(b, &[(t.u1, t.f1), (t.u1, t.f2), (t.u2, t.f1), (t.u2, t.f2)], true)?;
    require(b, &[(t.w1, t.g1), (t.w2, t.g2)], true)?;
    require(b, &t.forward_added(), false)?;
    Ok(rewire(b, &t.forward_removed(), &t.forward_added()))
}

/// The reverse switching, creating the 4-cycle on `{u1,u2} x {f1,f2}`.
pub fn apply_reverse(b: &BipartiteGraph, t: &SwitchTuple) -> Result<BipartiteGraph> {
    check_shape(b, t)?;
    require(
        b,
        &[(t.u1, t.g1), (t.u2, t.g2), (t.u1, t.f2), (t.u2, t.f1), (t.w1, t.f1), (t.w2, t.f2)],
        true,
    )?;
    require(b, &t.forward_removed(), false)?;
    Ok(rewire(b, &t.forward_added(), &t.forward_removed()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ForwardCondition {
    /// `g1` or `g2` lies on a 4-cycle.
    I,
    /// `dist(u_j, g_j) <= 3` or `dist(w_j, f_j) <= 3` for some `j`.
    II,
    /// `dist(g1, g2) = 2`.
    III,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ReverseCondition {
    /// One of `u1, u2, f1, f2, g1, g2` lies on a 4-cycle.
    I,
    /// `dist(u_j, f_j) <= 3` or `dist(w_j, g_j) <= 3` for some `j`.
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegalityVerdict<C> {
    pub legal: bool,
    pub conditions: Vec<C>,
    /// Whether the switched graph lies in the target class.
    pub ground_truth: bool,
}

impl<C> LegalityVerdict<C> {
    /// Illegal with no listed condition: a counterexample to soundness.
    pub fn unexplained(&self) -> bool {
        !self.ground_truth && self.conditions.is_empty()
    }
}

fn within(b: &BipartiteGraph, x: Vertex, y: Vertex, limit: usize) -> bool {
    let (dl, dr) = distances_from(b, x);
    let d = match y {
        Vertex::Left(j) => dl[j],
        Vertex::Right(i) => dr[i],
    };
    d.is_some_and(|d| d <= limit)
}

fn on_cycle(b: &BipartiteGraph) -> (Vec<bool>, Vec<bool>) {
    let mut left = vec![false; b.n_left()];
    let mut right = vec![false; b.n_right()];
    for c in four_cycles(b) {
        left[c.left.0] = true;
        left[c.left.1] = true;
        right[c.right.0] = true;
        right[c.right.1] = true;
    }
    (left, right)
}

/// Forward illegality conditions evaluated on `b`, independent of the
/// outcome.
pub fn forward_conditions(b: &BipartiteGraph, t: &SwitchTuple) -> Vec<ForwardCondition> {
    let (_, right_on) = on_cycle(b);
    let mut out = Vec::new();
    if right_on[t.g1] || right_on[t.g2] {
        out.push(ForwardCondition::I);
    }
    let close = [(t.u1, t.g1, t.w1, t.f1), (t.u2, t.g2, t.w2, t.f2)]
        .iter()
        .any(|&(u, g, w, f)| {
            within(b, Vertex::Left(u), Vertex::Right(g), 3)
                || within(b, Vertex::Left(w), Vertex::Right(f), 3)
        });
    if close {
        out.push(ForwardCondition::II);
    }
    let (_, dr) = distances_from(b, Vertex::Right(t.g1));
    if dr[t.g2] == Some(2) {
        out.push(ForwardCondition::III);
    }
    out
}

/// Reverse illegality conditions evaluated on `b2`.
pub fn reverse_conditions(b2: &BipartiteGraph, t: &SwitchTuple) -> Vec<ReverseCondition> {
    let (left_on, right_on) = on_cycle(b2);
    let mut out = Vec::new();
    if left_on[t.u1]
        || left_on[t.u2]
        || [t.f1, t.f2, t.g1, t.g2].iter().any(|&i| right_on[i])
    {
        out.push(ReverseCondition::I);
    }
    let close = [(t.u1, t.f1, t.w1, t.g1), (t.u2, t.f2, t.w2, t.g2)]
        .iter()
        .any(|&(u, f, w, g)| {
            within(b2, Vertex::Left(u), Vertex::Right(f), 3)
                || within(b2, Vertex::Left(w), Vertex::Right(g), 3)
        });
    if close {
        out.push(ReverseCondition::II);
    }
    out
}

/// Legality of the forward switching from `b`, which must lie in `C_d` with
/// `1 <= d <= n2`.
pub fn check_forward(
    b: &BipartiteGraph,
    t: &SwitchTuple,
    n2: usize,
) -> Result<LegalityVerdict<ForwardCondition>> {
    let cls = classify_unchecked(b, n2);
    if !cls.in_bplus || cls.d == 0 {
        return Err(Error::NotASwitching(format!(
            "source graph must lie in C_d with 1 <= d <= {n2} (d = {}, in B+ = {})",
            cls.d, cls.in_bplus
        )));
    }
    let after = apply_forward(b, t)?;
    let ground_truth = classify_unchecked(&after, n2).in_class(cls.d - 1);
    Ok(LegalityVerdict {
        legal: ground_truth,
        conditions: forward_conditions(b, t),
        ground_truth,
    })
}

/// Legality of the reverse switching from `b2`, which must lie in `C_{d-1}`
/// with `d <= n2`.
pub fn check_reverse(
    b2: &BipartiteGraph,
    t: &SwitchTuple,
    n2: usize,
) -> Result<LegalityVerdict<ReverseCondition>> {
    let cls = classify_unchecked(b2, n2);
    if !cls.in_bplus || cls.d + 1 > n2 {
        return Err(Error::NotASwitching(format!(
            "source graph must lie in C_(d-1) with d <= {n2} (d - 1 = {}, in B+ = {})",
            cls.d, cls.in_bplus
        )));
    }
    let after = apply_reverse(b2, t)?;
    let ground_truth = classify_unchecked(&after, n2).in_class(cls.d + 1);
    Ok(LegalityVerdict {
        legal: ground_truth,
        conditions: reverse_conditions(b2, t),
        ground_truth,
    })
}

/// Every suitable tuple with a 4-cycle on `{u1,u2} x {f1,f2}` and edges
/// `w1g1`, `w2g2`. `exclude_cycle_g` drops tuples whose `g1` or `g2` lies on
/// a 4-cycle.
pub fn forward_tuples(b: &BipartiteGraph, exclude_cycle_g: bool) -> Vec<SwitchTuple> {
    let cycles = four_cycles(b);
    let (_, right_on) = on_cycle(b);
    let edges: Vec<(usize, usize)> = b
        .edges()
        .filter(|&(_, i)| !(exclude_cycle_g && right_on[i]))
        .collect();
    let mut out = Vec::new();
    for c in &cycles {
        let (a, bb) = c.left;
        let (x, y) = c.right;
        for (u1, u2) in [(a, bb), (bb, a)] {
            for (f1, f2) in [(x, y), (y, x)] {
                for &(w1, g1) in &edges {
                    for &(w2, g2) in &edges {
                        let t = SwitchTuple { u1, u2, w1, w2, f1, f2, g1, g2 };
                        if t.is_suitable() {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out
}

/// The tuple set `S` used to pick a forward switching: 4 orderings per
/// 4-cycle, ordered pairs of edges `w1g1`, `w2g2`, and neither `g1` nor `g2`
/// on a 4-cycle. Deterministic order.
pub fn forward_candidates(b: &BipartiteGraph) -> Result<Vec<SwitchTuple>> {
    if four_cycles(b).is_empty() {
        return Err(Error::NoFourCycle);
    }
    Ok(forward_tuples(b, true))
}

/// Every suitable tuple accepted by [`apply_reverse`] on `b2`.
pub fn reverse_tuples(b2: &BipartiteGraph) -> Vec<SwitchTuple> {
    let mut out = Vec::new();
    let edges: Vec<(usize, usize)> = b2.edges().collect();
    for &(u1, g1) in &edges {
        for &(u2, g2) in &edges {
            if u1 == u2 || g1 == g2 {
                continue;
            }
            for &f2 in b2.left_neighbors(u1) {
                for &f1 in b2.left_neighbors(u2) {
                    let (f1, f2) = (f1 as usize, f2 as usize);
                    for &w1 in b2.right_neighbors(f1) {
                        for &w2 in b2.right_neighbors(f2) {
                            let t = SwitchTuple {
                                u1,
                                u2,
                                w1: w1 as usize,
                                w2: w2 as usize,
                                f1,
                                f2,
                                g1,
                                g2,
                            };
                            if t.is_suitable() && apply_reverse(b2, &t).is_ok() {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Default cap on pairing-model rejections per sample.
pub const DEFAULT_RETRY_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct PairingSample {
    pub graph: BipartiteGraph,
    /// Pairings rejected for producing a repeated edge.
    pub rejections: u64,
}

/// Uniform element of `B_r(k)` by the pairing model: left half-edges are
/// shuffled into `M/r` consecutive slots of `r`, and the pairing is redrawn
/// while any slot holds two half-edges of the same left vertex. The expected
/// acceptance rate is about `exp(-(r-1) M_2 / 2M)`.
pub fn pairing_sample<R: Rng + ?Sized>(
    ds: &DegreeSequence,
    rng: &mut R,
    retry_limit: u64,
) -> Result<PairingSample> {
    let m = ds.edge_count()? as usize;
    if ds.total() == 0 {
        return Err(Error::InvalidInput("pairing model needs M >= 1".into()));
    }
    let r = ds.r() as usize;
    let mut owners: Vec<u32> = ds
        .degrees()
        .iter()
        .enumerate()
        .flat_map(|(j, &k)| std::iter::repeat_n(j as u32, k as usize))
        .collect();
    let mut rejections = 0;
    loop {
        owners.shuffle(rng);
        let simple = owners.chunks(r).all(|slot| all_distinct_u32(slot));
        if simple {
            let mut g = BipartiteGraph::empty(ds.n(), m);
            for (i, slot) in owners.chunks(r).enumerate() {
                for &j in slot {
                    g.insert_edge(j as usize, i);
                }
            }
            return Ok(PairingSample { graph: g, rejections });
        }
        rejections += 1;
        if rejections >= retry_limit {
            return Err(Error::RetryLimitExceeded(rejections));
        }
    }
}

fn all_distinct_u32(xs: &[u32]) -> bool {
    xs.iter().enumerate().all(|(a, x)| !xs[a + 1..].contains(x))
}

/// Per-worker random stream derived from `(seed, worker)`.
pub fn worker_rng(seed: u64, worker: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

#[derive(Debug, Clone, Serialize)]
pub struct SwitchSample {
    #[serde(skip)]
    pub graph: BipartiteGraph,
    /// Switchings applied.
    pub steps: u64,
    /// Pairings rejected (repeated edges, or outside `B⁺`).
    pub rejections: u64,
    /// Number of 4-cycles before each switching and at the end.
    pub d_trajectory: Vec<usize>,
    /// The output law is only approximately uniform over graphs with no
    /// 4-cycle.
    pub approximately_uniform: bool,
}

/// A conforming graph with no 4-cycle: a pairing-model draw conditioned on
/// `B⁺`, followed by uniformly chosen legal forward switchings until no
/// 4-cycle is left. Not exactly uniform. `max_steps` caps the number of
/// candidate draws spent on switchings.
pub fn sample_no4cycle<R: Rng + ?Sized>(
    ds: &DegreeSequence,
    rng: &mut R,
    max_steps: u64,
    retry_limit: u64,
) -> Result<SwitchSample> {
    let n2 = ds.n2_cap() as usize;
    let mut rejections = 0;
    let mut g = loop {
        let s = pairing_sample(ds, rng, retry_limit.saturating_sub(rejections).max(1))?;
        rejections += s.rejections;
        if classify_unchecked(&s.graph, n2).in_bplus {
            break s.graph;
        }
        rejections += 1;
        if rejections >= retry_limit {
            return Err(Error::RetryLimitExceeded(rejections));
        }
    };

    let mut trajectory = Vec::new();
    let mut steps = 0;
    let mut draws = 0;
    loop {
        let d = four_cycles(&g).len();
        trajectory.push(d);
        if d == 0 {
            break;
        }
        let candidates = forward_candidates(&g)?;
        let next = loop {
            if draws >= max_steps || candidates.is_empty() {
                return Err(Error::StepLimit(max_steps));
            }
            draws += 1;
            let t = candidates[rng.random_range(0..candidates.len())];
            let Ok(after) = apply_forward(&g, &t) else { continue };
            if classify_unchecked(&after, n2).in_class(d - 1) {
                break after;
            }
        };
        g = next;
        steps += 1;
    }
    Ok(SwitchSample {
        graph: g,
        steps,
        rejections,
        d_trajectory: trajectory,
        approximately_uniform: true,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GirthEstimate {
    pub p_hat: f64,
    /// Half-width of the 95% normal-approximation interval.
    pub ci_halfwidth: f64,
    pub trials: u64,
    pub hits: u64,
    pub rejections: u64,
    /// The closed-form prediction for comparison.
    pub predicted: f64,
    pub seed: u64,
    pub workers: usize,
}

/// Fraction of pairing-model draws with no 4-cycle. Trials are split over
/// `workers` streams; results are reproducible for a fixed
/// `(seed, workers)`.
pub fn monte_carlo_girth(
    ds: &DegreeSequence,
    seed: u64,
    trials: u64,
    workers: usize,
    retry_limit: u64,
) -> Result<GirthEstimate> {
    if trials == 0 {
        return Err(Error::PreconditionFailed(vec!["trials must be at least 1".into()]));
    }
    let workers = workers.max(1);
    let predicted = girth6_probability(ds)?.value;
    let per = trials / workers as u64;
    let extra = trials % workers as u64;
    let parts: Vec<Result<(u64, u64)>> = (0..workers as u64)
        .into_par_iter()
        .map(|w| {
            let mut rng = worker_rng(seed, w);
            let quota = per + u64::from(w < extra);
            let (mut hits, mut rejections) = (0, 0);
            for _ in 0..quota {
                let s = pairing_sample(ds, &mut rng, retry_limit)?;
                rejections += s.rejections;
                if four_cycles(&s.graph).is_empty() {
                    hits += 1;
                }
            }
            Ok((hits, rejections))
        })
        .collect();
    let (mut hits, mut rejections) = (0, 0);
    for p in parts {
        let (h, r) = p?;
        hits += h;
        rejections += r;
    }
    let p_hat = hits as f64 / trials as f64;
    Ok(GirthEstimate {
        p_hat,
        ci_halfwidth: 1.96 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
        trials,
        hits,
        rejections,
        predicted,
        seed,
        workers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::tests::two_cycle_example;

    /// A 4-cycle on v0,v1 x e0,e1 plus disjoint edges v2e2, v3e3.
    fn cycle_plus_two() -> BipartiteGraph {
        BipartiteGraph::from_edges(4, 4, [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (3, 3)]).unwrap()
    }

    fn tuple() -> SwitchTuple {
        SwitchTuple { u1: 0, u2: 1, w1: 2, w2: 3, f1: 0, f2: 1, g1: 2, g2: 3 }
    }

    #[test]
    fn forward_then_reverse() {
        let b = cycle_plus_two();
        let t = tuple();
        let b2 = apply_forward(&b, &t).unwrap();
        assert!(four_cycles(&b2).is_empty());
        assert_eq!(b2.left_degrees(), b.left_degrees());
        assert_eq!(b2.right_degrees(), b.right_degrees());
        assert!(b2.has_edge(0, 2) && b2.has_edge(2, 0) && !b2.has_edge(0, 0));
        assert_eq!(apply_reverse(&b2, &t).unwrap(), b);
    }

    #[test]
    fn forward_rejects_present_edge() {
        let mut b = cycle_plus_two();
        b.insert_edge(0, 2);
        match apply_forward(&b, &tuple()) {
            Err(Error::NotASwitching(msg)) => assert!(msg.contains("v1e3"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reverse_rejects_missing_edge() {
        let b2 = apply_forward(&cycle_plus_two(), &tuple()).unwrap();
        let mut broken = b2.clone();
        broken.remove_edge(2, 0);
        assert!(matches!(apply_reverse(&broken, &tuple()), Err(Error::NotASwitching(_))));
    }

    #[test]
    fn candidate_count_for_small_graph() {
        // 4 orderings; (w1g1, w2g2) must be (v2e2, v3e3) or (v3e3, v2e2).
        let b = cycle_plus_two();
        assert_eq!(forward_candidates(&b).unwrap().len(), 8);
        let acyclic = BipartiteGraph::from_edges(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(forward_candidates(&acyclic), Err(Error::NoFourCycle));
    }

    #[test]
    fn candidates_match_filter_over_all_tuples() {
        let b = two_cycle_example();
        let fast = forward_candidates(&b).unwrap();
        let (_, right_on) = on_cycle(&b);
        let mut slow = Vec::new();
        let cycles = four_cycles(&b);
        for u1 in 0..6 {
            for u2 in 0..6 {
                for f1 in 0..4 {
                    for f2 in 0..4 {
                        let on = cycles.iter().any(|c| {
                            c.contains_left(u1) && c.contains_left(u2) && c.contains_right(f1) && c.contains_right(f2)
                        });
                        if u1 == u2 || f1 == f2 || !on {
                            continue;
                        }
                        for (w1, g1) in b.edges() {
                            for (w2, g2) in b.edges() {
                                let t = SwitchTuple { u1, u2, w1, w2, f1, f2, g1, g2 };
                                if t.is_suitable() && !right_on[g1] && !right_on[g2] {
                                    slow.push(t);
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut fast_sorted: Vec<_> = fast.iter().map(|t| format!("{t:?}")).collect();
        let mut slow_sorted: Vec<_> = slow.iter().map(|t| format!("{t:?}")).collect();
        fast_sorted.sort();
        slow_sorted.sort();
        assert_eq!(fast_sorted, slow_sorted);
        // Every right vertex of the two-cycle example graph lies on a 4-cycle.
        assert!(fast.is_empty());
        assert!(fast.len() <= 4 * 2 * 144);
    }

    #[test]
    fn legal_switch_has_no_conditions() {
        let b = cycle_plus_two();
        let v = check_forward(&b, &tuple(), 24).unwrap();
        assert!(v.legal && v.ground_truth);
        assert!(v.conditions.is_empty());
    }

    #[test]
    fn g_on_second_cycle_is_flagged() {
        // Cycles v0v1 x e0e1 and v2v3 x e2e3, plus a pendant path to reach e4.
        let b = BipartiteGraph::from_edges(
            5,
            5,
            [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3), (4, 4)],
        )
        .unwrap();
        let t = SwitchTuple { u1: 0, u2: 1, w1: 2, w2: 4, f1: 0, f2: 1, g1: 2, g2: 4 };
        let v = check_forward(&b, &t, 24).unwrap();
        assert!(!v.legal);
        assert!(v.conditions.contains(&ForwardCondition::I));
    }

    #[test]
    fn pairing_sample_is_reproducible() {
        let ds = DegreeSequence::new(&[2, 2, 2, 1, 1, 1], 3).unwrap();
        let a = pairing_sample(&ds, &mut worker_rng(7, 0), 1000).unwrap();
        let b = pairing_sample(&ds, &mut worker_rng(7, 0), 1000).unwrap();
        assert_eq!(a.graph, b.graph);
        a.graph.check_conforms(&ds).unwrap();
    }

    #[test]
    fn impossible_instances_hit_retry_limit() {
        let ds = DegreeSequence::new(&[2, 2, 2], 3).unwrap();
        let s = pairing_sample(&ds, &mut worker_rng(1, 0), 1000).unwrap();
        assert_eq!(s.graph.edge_count(), 6);
        let ds = DegreeSequence::new(&[3, 3], 3).unwrap();
        assert_eq!(
            pairing_sample(&ds, &mut worker_rng(1, 0), 50).map(|s| s.rejections),
            Err(Error::RetryLimitExceeded(50))
        );
    }

    #[test]
    fn switch_sampler_reaches_girth_six() {
        let ds = DegreeSequence::new(&[2; 30], 3).unwrap();
        let mut rng = worker_rng(3, 0);
        for _ in 0..5 {
            let s = sample_no4cycle(&ds, &mut rng, 10_000, DEFAULT_RETRY_LIMIT).unwrap();
            assert!(four_cycles(&s.graph).is_empty());
            s.graph.check_conforms(&ds).unwrap();
            assert_eq!(*s.d_trajectory.last().unwrap(), 0);
            assert_eq!(s.steps as usize + 1, s.d_trajectory.len());
        }
        let ones = DegreeSequence::new(&[1; 9], 3).unwrap();
        let s = sample_no4cycle(&ones, &mut rng, 10, 100).unwrap();
        assert_eq!(s.steps, 0);
    }

    #[test]
    fn girth_estimate_for_simple_cases() {
        let ones = DegreeSequence::new(&[1; 9], 3).unwrap();
        let e = monte_carlo_girth(&ones, 5, 100, 3, 100).unwrap();
        assert_eq!(e.p_hat, 1.0);
        assert_eq!(e.ci_halfwidth, 0.0);
        assert!(matches!(monte_carlo_girth(&ones, 5, 0, 1, 100), Err(Error::PreconditionFailed(_))));
        let twos = DegreeSequence::new(&[2; 30], 3).unwrap();
        let a = monte_carlo_girth(&twos, 11, 200, 4, DEFAULT_RETRY_LIMIT).unwrap();
        let b = monte_carlo_girth(&twos, 11, 200, 4, DEFAULT_RETRY_LIMIT).unwrap();
        assert_eq!(a, b);
    }
}
