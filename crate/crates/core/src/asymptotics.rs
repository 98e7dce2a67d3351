//! Closed-form estimates and bounds, evaluated in log space.
//!
//! Factorials go through [`ln_factorial`] so that `M` in the millions is
//! fine. Every [`Estimate`] carries an `error_scale`: the argument of the
//! big-O error term. It is reported, never enforced.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::degree::{falling_factorial_big, DegreeSequence};
use crate::error::{Error, Result};
use crate::pattern::{injections, Pattern, Shape};

/// `ln n!`, exact-table for small `n` and log-gamma beyond.
pub fn ln_factorial(n: u64) -> f64 {
    statrs::function::factorial::ln_factorial(n)
}

pub const LOOP_TERM: &str = "loop_term";
pub const DOUBLE_LINK_TERM: &str = "double_link_term";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub log_value: f64,
    /// `exp(log_value)`, or `+inf` when that overflows.
    pub value: f64,
    pub leading_log: f64,
    pub corrections: BTreeMap<String, f64>,
    pub error_scale: f64,
}

impl Estimate {
    fn build(leading_log: f64, corrections: &[(&str, f64)], error_scale: f64) -> Self {
        let log_value = corrections.iter().fold(leading_log, |acc, &(_, c)| acc + c);
        Estimate {
            log_value,
            value: log_value.exp(),
            leading_log,
            corrections: corrections
                .iter()
                .map(|&(name, c)| (name.to_string(), c))
                .collect(),
            error_scale,
        }
    }
}

struct Moments {
    m: f64,
    m2: f64,
    r: f64,
    k_max: f64,
}

fn moments(ds: &DegreeSequence) -> Result<Moments> {
    ds.edge_count()?;
    Ok(Moments {
        m: ds.total() as f64,
        m2: ds.moment_f64(2),
        r: ds.r() as f64,
        k_max: ds.k_max() as f64,
    })
}

/// `-(r-1) M_2 / 2M`, zero when `M = 0`.
fn loop_term(x: &Moments) -> f64 {
    if x.m == 0.0 {
        0.0
    } else {
        -(x.r - 1.0) * x.m2 / (2.0 * x.m)
    }
}

/// `-(r-1)^2 M_2^2 / 4M^2`, zero when `M = 0`.
fn double_link_term(x: &Moments) -> f64 {
    if x.m == 0.0 {
        0.0
    } else {
        let t = (x.r - 1.0) * x.m2 / x.m;
        -t * t / 4.0
    }
}

fn scale(numerator: f64, m: f64) -> f64 {
    if m == 0.0 {
        0.0
    } else {
        numerator / m
    }
}

/// `ln M! - (M/r) ln r! - sum ln k_i!`.
fn log_pairings(ds: &DegreeSequence) -> Result<f64> {
    let m = ds.edge_count()?;
    Ok(ln_factorial(ds.total())
        - m as f64 * ln_factorial(ds.r())
        - ds.degrees().iter().map(|&k| ln_factorial(k)).sum::<f64>())
}

/// `ln( M! / ((M/r)! (r!)^{M/r} prod k_i!) )`.
pub fn log_leading_term(ds: &DegreeSequence) -> Result<f64> {
    Ok(log_pairings(ds)? - ln_factorial(ds.edge_count()?))
}

/// Estimate of `|L_r(k)|`, the number of linear hypergraphs.
pub fn estimate_linear(ds: &DegreeSequence) -> Result<Estimate> {
    let x = moments(ds)?;
    Ok(Estimate::build(
        log_leading_term(ds)?,
        &[(LOOP_TERM, loop_term(&x)), (DOUBLE_LINK_TERM, double_link_term(&x))],
        scale(x.r.powi(4) * x.k_max.powi(4) * (x.k_max + x.r), x.m),
    ))
}

/// Estimate of `|H_r(k)|`, the number of simple hypergraphs.
pub fn estimate_simple(ds: &DegreeSequence) -> Result<Estimate> {
    let x = moments(ds)?;
    Ok(Estimate::build(
        log_leading_term(ds)?,
        &[(LOOP_TERM, loop_term(&x))],
        scale(x.r.powi(4) * x.k_max.powi(3), x.m),
    ))
}

/// Estimate of `|B_r(k)|`, the number of conforming bipartite graphs.
pub fn estimate_bigraph(ds: &DegreeSequence) -> Result<Estimate> {
    let x = moments(ds)?;
    Ok(Estimate::build(
        log_pairings(ds)?,
        &[(LOOP_TERM, loop_term(&x))],
        scale(x.r.powi(2) * x.k_max.powi(2), x.m),
    ))
}

/// Probability that a uniform element of `B_r(k)` has no 4-cycle.
pub fn girth6_probability(ds: &DegreeSequence) -> Result<Estimate> {
    let x = moments(ds)?;
    Ok(Estimate::build(
        0.0,
        &[(DOUBLE_LINK_TERM, double_link_term(&x))],
        scale(x.r.powi(4) * x.k_max.powi(4) * (x.k_max + x.r), x.m),
    ))
}

/// Leading factor `(r-1)^2 M_2^2 / (4 d M^2)` of `|C_d| / |C_{d-1}|`.
pub fn switching_ratio(ds: &DegreeSequence, d: u64) -> f64 {
    assert!(d >= 1, "d must be positive");
    let x = Moments {
        m: ds.total() as f64,
        m2: ds.moment_f64(2),
        r: ds.r() as f64,
        k_max: 0.0,
    };
    -double_link_term(&x) / d as f64
}

/// Degrees of a bipartite graph (or of a subgraph, on the same vertex set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteDegrees {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
}

impl BipartiteDegrees {
    pub fn new(left: Vec<u64>, right: Vec<u64>) -> Self {
        BipartiteDegrees { left, right }
    }

    /// Left degrees `k`, and `M/r` right vertices of degree `r`.
    pub fn of(ds: &DegreeSequence) -> Result<Self> {
        let m = ds.edge_count()? as usize;
        Ok(Self::new(ds.degrees().to_vec(), vec![ds.r(); m]))
    }

    pub fn edges(&self) -> u64 {
        self.left.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.left.iter().chain(&self.right).copied().max().unwrap_or(0)
    }
}

/// `Gamma = 2 g_max (g_max + l_max - 1) + 2`.
fn gamma(g_max: u64, l_max: u64) -> u64 {
    2 * g_max * (g_max + l_max).saturating_sub(1) + 2
}

fn check_gamma(e_g: u64, g_max: u64, e_l: u64, l_max: u64) -> Result<u64> {
    let gamma = gamma(g_max, l_max);
    if e_g < gamma || e_g - gamma < e_l {
        return Err(Error::PreconditionFailed(vec![format!(
            "E_g - Gamma = {e_g} - {gamma} is below E_l = {e_l}"
        )]));
    }
    Ok(e_g - gamma)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Upper bound on the probability that a uniform bipartite graph with
/// degrees `g` contains the subgraph with degrees `l` (given on the same
/// vertex set), as an exact rational.
pub fn mckay_upper_bound(g: &BipartiteDegrees, l: &BipartiteDegrees) -> Result<BigRational> {
    if g.left.len() != l.left.len() || g.right.len() != l.right.len() {
        return Err(Error::InvalidInput(
            "subgraph degrees must be given on the host vertex set".into(),
        ));
    }
    let e_l = l.edges();
    let room = check_gamma(g.edges(), g.max(), e_l, l.max())?;
    let mut num = BigUint::one();
    for (&gi, &li) in g.left.iter().zip(&l.left).chain(g.right.iter().zip(&l.right)) {
        num *= falling_factorial_big(gi, li);
    }
    Ok(ratio(num, falling_factorial_big(room, e_l)))
}

/// Sum of [`mckay_upper_bound`] over all copies in `K_{n,M/r}` of every
/// shape making up `pattern`: an upper bound on the expected number of
/// occurrences in a uniform element of `B_r(k)`.
pub fn mckay_pattern_bound(ds: &DegreeSequence, pattern: Pattern) -> Result<BigRational> {
    let host = BipartiteDegrees::of(ds)?;
    let g_max = host.max();
    let mut total = BigRational::zero();
    for shape in pattern.shapes() {
        total += shape_bound(ds, &host, g_max, &shape)?;
    }
    Ok(total)
}

fn shape_bound(
    ds: &DegreeSequence,
    host: &BipartiteDegrees,
    g_max: u64,
    shape: &Shape,
) -> Result<BigRational> {
    let e_l = shape.edges.len() as u64;
    let room = check_gamma(host.edges(), g_max, e_l, shape.max_degree())?;
    let ld = shape.left_degrees();
    let rd = shape.right_degrees();
    // Every left embedding contributes prod (k_{phi(a)})_{l_a}.
    let mut left_sum = BigUint::zero();
    for phi in injections(shape.n_left, ds.n()) {
        let mut term = BigUint::one();
        for (a, &j) in phi.iter().enumerate() {
            term *= falling_factorial_big(ds.degrees()[j], ld[a]);
            if term.is_zero() {
                break;
            }
        }
        left_sum += term;
    }
    // Right vertices are interchangeable: (M/r)_{n_right} prod (r)_{l'_b}.
    let m = host.right.len() as u64;
    let mut right_sum = falling_factorial_big(m, shape.n_right as u64);
    for &b in &rd {
        right_sum *= falling_factorial_big(ds.r(), b);
    }
    let den = falling_factorial_big(room, e_l) * BigUint::from(shape.automorphisms());
    Ok(ratio(left_sum * right_sum, den))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumBounds {
    pub sigma1: f64,
    pub sigma2: f64,
    /// `n_0, ..., n_N`.
    pub n_values: Vec<f64>,
    pub total: f64,
}

/// Evaluates the recurrence `n_0 = 1`, `n_i = (A(i) - (i-1) C(i)) n_{i-1} / i`
/// and the two-sided bound on `sum n_i`. `a[i-1]` and `c[i-1]` hold `A(i)`
/// and `C(i)`.
pub fn sum_bounds(a: &[f64], c: &[f64], c_hat: f64) -> Result<SumBounds> {
    let n = a.len();
    let mut failed = Vec::new();
    if c.len() != n {
        failed.push(format!("A has {n} entries but C has {}", c.len()));
    }
    if n < 2 {
        failed.push(format!("N = {n} is below 2"));
    }
    if !(c_hat > 0.0 && c_hat < 1.0 / 3.0) {
        failed.push(format!("c_hat = {c_hat} is outside (0, 1/3)"));
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed));
    }
    for i in 1..=n {
        let (ai, ci) = (a[i - 1], c[i - 1]);
        if !(ai >= 0.0) {
            failed.push(format!("A({i}) = {ai} is negative"));
        }
        if !(ai - (i as f64 - 1.0) * ci >= 0.0) {
            failed.push(format!("A({i}) - ({i}-1) C({i}) is negative"));
        }
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let a1 = fold(a, f64::min, f64::INFINITY);
    let a2 = fold(a, f64::max, f64::NEG_INFINITY);
    let c1 = fold(c, f64::min, f64::INFINITY);
    let c2 = fold(c, f64::max, f64::NEG_INFINITY);
    let spread = (a2 / n as f64).max(c1.abs()).max(c2.abs());
    if !(spread <= c_hat) {
        failed.push(format!(
            "max(A_2/N, |C_1|, |C_2|) = {spread} exceeds c_hat = {c_hat}"
        ));
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed));
    }

    let mut n_values = Vec::with_capacity(n + 1);
    n_values.push(1.0);
    for i in 1..=n {
        let prev = n_values[i - 1];
        n_values.push((a[i - 1] - (i as f64 - 1.0) * c[i - 1]) * prev / i as f64);
    }
    let total: f64 = n_values.iter().sum();
    let tail = (2.0 * std::f64::consts::E * c_hat).powi(n as i32);
    let sigma1 = (a1 - a1 * c2 / 2.0).exp() - tail;
    let sigma2 = (a2 - a2 * c1 / 2.0 + a2 * c1 * c1 / 2.0).exp() + tail;
    // Relative slack for rounding in the float evaluation only.
    let slack = 1e-12 * total.abs().max(1.0);
    if sigma1 > total + slack || total > sigma2 + slack {
        return Err(Error::InvariantViolation(format!(
            "sum bound fails: {sigma1} <= {total} <= {sigma2}"
        )));
    }
    Ok(SumBounds {
        sigma1,
        sigma2,
        n_values,
        total,
    })
}

/// Exact rational value of an estimate whose corrections vanish, for
/// comparison at small `M`.
pub fn leading_term_exact(ds: &DegreeSequence) -> Result<BigRational> {
    let m = ds.edge_count()?;
    let mut den = crate::degree::factorial_big(m);
    let rf = crate::degree::factorial_big(ds.r());
    for _ in 0..m {
        den *= &rf;
    }
    for &k in ds.degrees() {
        den *= crate::degree::factorial_big(k);
    }
    Ok(ratio(crate::degree::factorial_big(ds.total()), den))
}

/// Float value of an exact rational, for reporting.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
