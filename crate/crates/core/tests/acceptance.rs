//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use linhyper::asymptotics::{
    estimate_bigraph, estimate_linear, estimate_simple, mckay_pattern_bound, rational_to_f64,
    switching_ratio, sum_bounds,
};
use linhyper::bigraph::{classify_unchecked, BipartiteGraph};
use linhyper::oracle::{
    battery, census, enumerate_bigraphs, full_report, orbit_sweep, pattern_expectation,
    preferred_side, random_instances, ClassFilter, SearchGuard,
};
use linhyper::pattern::Pattern;
use linhyper::switching::{
    apply_forward, apply_reverse, forward_conditions, forward_tuples, monte_carlo_girth,
    pairing_sample, reverse_conditions, reverse_tuples, worker_rng, DEFAULT_RETRY_LIMIT,
};
use linhyper::DegreeSequence;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

/// Search bound for battery instances beyond the default `M <= 16` limit.
const BATTERY_SPACE: f64 = 1e9;

fn main_battery() -> Vec<DegreeSequence> {
    let guard = SearchGuard::with_max_space(BATTERY_SPACE);
    battery(6, &[3, 4], 3).into_iter().filter(|d| guard.admits(d)).collect()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn exact_small_counts() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_linhyper");
    let start = Instant::now();
    let query = |k: &str| -> serde_json::Value {
        let out = Command::new(bin).args(["exact", "-r", "3", "-k", k]).output().unwrap();
        serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null)
    };
    let ones = query("1,1,1,1,1,1");
    let threes = query("3,3,3,3");
    let elapsed = start.elapsed();
    let ok = ones["count_b"] == "20"
        && ones["count_b0"] == "20"
        && ones["count_h"] == "10"
        && ones["count_l"] == "10"
        && threes["count_h"] == "1"
        && threes["count_l"] == "0"
        && elapsed < Duration::from_secs(1);
    verdict(
        ok,
        format!(
            "(1^6): B={} B0={} H={} L={}; (3^4): H={} L={}; {:.0?}",
            ones["count_b"], ones["count_b0"], ones["count_h"], ones["count_l"], threes["count_h"], threes["count_l"], elapsed
        ),
    )
}

fn identity_suite() -> Verdict {
    let start = Instant::now();
    let wide = SearchGuard::with_max_space(BATTERY_SPACE);
    let mut instances = main_battery();
    let main_len = instances.len();
    let mut rng = worker_rng(2024, 0);
    instances.extend(random_instances(&mut rng, 50, 7, &[3, 4], 3, &SearchGuard::default()));
    let mut failures = Vec::new();
    for d in &instances {
        if let Err(e) = full_report(d, &wide) {
            failures.push(format!("{:?} r={}: {e}", d.degrees(), d.r()));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        failures.is_empty() && elapsed < Duration::from_secs(300),
        format!(
            "{main_len} battery + 50 random instances, {} failures {:?}, {:.1?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>(),
            elapsed
        ),
    )
}

fn vanishing_corrections() -> Verdict {
    let wide = SearchGuard::with_max_space(BATTERY_SPACE);
    let mut checked = 0;
    let mut bad = Vec::new();
    for d in main_battery().into_iter().filter(|d| d.moment(2).is_zero()) {
        let rep = full_report(&d, &wide).unwrap();
        let pairs = [
            (estimate_linear(&d).unwrap().value, &rep.count_l),
            (estimate_simple(&d).unwrap().value, &rep.count_h),
            (estimate_bigraph(&d).unwrap().value, &rep.count_b),
        ];
        for (est, exact) in pairs {
            let exact = exact.to_f64().unwrap();
            if !rel_close(est, exact, 1e-9) {
                bad.push(format!("{:?} r={}: {est} vs {exact}", d.degrees(), d.r()));
            }
        }
        checked += 1;
    }
    verdict(bad.is_empty() && checked > 0, format!("{checked} instances with M_2 = 0, mismatches {bad:?}"))
}

fn two_cycle_example() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two_cycle.json");
    std::fs::write(
        &path,
        r#"{"n_left": 6, "n_right": 4, "edges": [[1,1],[2,1],[3,1],[1,2],[2,2],[4,2],[2,3],[5,3],[6,3],[4,4],[5,4],[6,4]]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_linhyper"))
        .args(["classify", "--input", path.to_str().unwrap()])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    let expected = serde_json::json!([
        {"left": [1, 2], "right": [1, 2]},
        {"left": [5, 6], "right": [3, 4]}
    ]);
    let ok = v["d"] == 2 && v["four_cycles"] == expected && v["in_bplus"] == true;
    verdict(ok, format!("d={} cycles={} in_bplus={}", v["d"], v["four_cycles"], v["in_bplus"]))
}

#[derive(Default)]
struct SweepTally {
    graphs: u64,
    forward_applied: u64,
    reverse_applied: u64,
    unexplained: Vec<String>,
    involution_failures: u64,
    wrong_landing: u64,
    /// Weighted legal-switching counts by `d` of the graph with more cycles.
    forward_legal: HashMap<usize, BigUint>,
    reverse_legal: HashMap<usize, BigUint>,
}

impl SweepTally {
    fn merge(mut self, o: SweepTally) -> SweepTally {
        self.graphs += o.graphs;
        self.forward_applied += o.forward_applied;
        self.reverse_applied += o.reverse_applied;
        self.unexplained.extend(o.unexplained);
        self.involution_failures += o.involution_failures;
        self.wrong_landing += o.wrong_landing;
        for (d, c) in o.forward_legal {
            *self.forward_legal.entry(d).or_default() += c;
        }
        for (d, c) in o.reverse_legal {
            *self.reverse_legal.entry(d).or_default() += c;
        }
        self
    }
}

fn sweep_graph(acc: &mut SweepTally, b: &BipartiteGraph, w: &BigUint, n2: usize) {
    acc.graphs += 1;
    let cls = classify_unchecked(b, n2);
    if !cls.in_bplus {
        return;
    }
    let d = cls.d;
    if d >= 1 {
        for t in forward_tuples(b, false) {
            let Ok(after) = apply_forward(b, &t) else { continue };
            acc.forward_applied += 1;
            let after_cls = classify_unchecked(&after, n2);
            let legal = after_cls.in_class(d - 1);
            if !legal && forward_conditions(b, &t).is_empty() {
                acc.unexplained.push(format!("forward {t:?} on {:?}", b.to_json().edges));
            }
            if legal && after_cls.four_cycles.len() != d - 1 {
                acc.wrong_landing += 1;
            }
            if apply_reverse(&after, &t).as_ref() != Ok(b) {
                acc.involution_failures += 1;
            }
            if legal {
                *acc.forward_legal.entry(d).or_default() += w;
            }
        }
    }
    if d + 1 <= n2 {
        for t in reverse_tuples(b) {
            let after = apply_reverse(b, &t).unwrap();
            acc.reverse_applied += 1;
            let legal = classify_unchecked(&after, n2).in_class(d + 1);
            if !legal && reverse_conditions(b, &t).is_empty() {
                acc.unexplained.push(format!("reverse {t:?} on {:?}", b.to_json().edges));
            }
            if apply_forward(&after, &t).as_ref() != Ok(b) {
                acc.involution_failures += 1;
            }
            if legal {
                *acc.reverse_legal.entry(d + 1).or_default() += w;
            }
        }
    }
}

/// Degree sequences with `n <= 6` and exactly four right vertices (the
/// fewest that admit a switching), for `r = 2, 3, 4`.
fn sweep_instances() -> Vec<DegreeSequence> {
    let mut out = Vec::new();
    for r in 2..=4u64 {
        for d in battery(6, &[r], 4) {
            if d.total() == 4 * r {
                out.push(d);
            }
        }
    }
    out
}

fn switching_soundness() -> Verdict {
    let start = Instant::now();
    let guard = SearchGuard::with_max_space(BATTERY_SPACE);
    let mut total = SweepTally::default();
    let mut identity_breaks = Vec::new();
    let instances = sweep_instances();
    for d in &instances {
        let n2 = d.n2_cap() as usize;
        let tally = orbit_sweep(
            d,
            &guard,
            preferred_side(d),
            SweepTally::default,
            |acc, b, w| sweep_graph(acc, b, w, n2),
            SweepTally::merge,
        )
        .unwrap();
        let mut keys: Vec<usize> = tally.forward_legal.keys().chain(tally.reverse_legal.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            let f = tally.forward_legal.get(&key).cloned().unwrap_or_default();
            let r = tally.reverse_legal.get(&key).cloned().unwrap_or_default();
            if f != r {
                identity_breaks.push(format!("{:?} r={} d={key}: {f} vs {r}", d.degrees(), d.r()));
            }
        }
        total = total.merge(tally);
    }
    let elapsed = start.elapsed();
    let ok = total.unexplained.is_empty()
        && total.involution_failures == 0
        && total.wrong_landing == 0
        && identity_breaks.is_empty()
        && elapsed < Duration::from_secs(600);
    verdict(
        ok,
        format!(
            "{} instances, {} orbit representatives, {} forward and {} reverse switchings; unexplained {} {:?}; involution failures {}; wrong landings {}; double-count mismatches {:?}; {:.1?}",
            instances.len(),
            total.graphs,
            total.forward_applied,
            total.reverse_applied,
            total.unexplained.len(),
            total.unexplained.iter().take(2).collect::<Vec<_>>(),
            total.involution_failures,
            total.wrong_landing,
            identity_breaks,
            elapsed
        ),
    )
}

/// `max(q/p, p/q)`, infinite when either side is zero and the other is not.
fn agreement_factor(exact: f64, predicted: f64) -> f64 {
    if exact == predicted {
        1.0
    } else if exact == 0.0 || predicted == 0.0 {
        f64::INFINITY
    } else {
        (exact / predicted).max(predicted / exact)
    }
}

fn ratio_of(profile: &[BigUint]) -> f64 {
    if profile[0].is_zero() {
        return f64::INFINITY;
    }
    rational_to_f64(&BigRational::new(profile[1].clone().into(), profile[0].clone().into()))
}

fn leading_ratio() -> Verdict {
    let wide = SearchGuard::with_max_space(BATTERY_SPACE);
    let mut checked = 0;
    let mut outside = Vec::new();
    for d in main_battery() {
        let c = census(&d, &wide).unwrap();
        if c.cd_profile.len() < 2 || c.cd_profile[1].is_zero() {
            continue;
        }
        checked += 1;
        let factor = agreement_factor(ratio_of(&c.cd_profile), switching_ratio(&d, 1));
        if !(factor <= 3.0) {
            outside.push(format!("{:?} r={}: factor {factor:.3}", d.degrees(), d.r()));
        }
    }
    let mut trend = Vec::new();
    for n in [6usize, 9, 12] {
        let d = DegreeSequence::from_unsigned(vec![2; n], 3);
        let c = census(&d, &SearchGuard::with_max_space(1e12)).unwrap();
        let exact = ratio_of(&c.cd_profile);
        trend.push((n, exact, agreement_factor(exact, switching_ratio(&d, 1))));
    }
    let monotone = trend.windows(2).all(|w| w[1].2 < w[0].2);
    verdict(
        outside.is_empty() && monotone,
        format!(
            "{checked} battery instances with |C_1| >= 1, {} outside factor 3 {:?}; scaling family (n, |C_1|/|C_0|, factor): {}",
            outside.len(),
            outside.iter().take(4).collect::<Vec<_>>(),
            trend
                .iter()
                .map(|(n, q, f)| format!("({n}, {q:.4}, {f:.4})"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    )
}

fn girth_monte_carlo() -> Verdict {
    let start = Instant::now();
    let d = DegreeSequence::from_unsigned(vec![2; 300], 3);
    let e = monte_carlo_girth(&d, 20240601, 10_000, 8, DEFAULT_RETRY_LIMIT).unwrap();
    let elapsed = start.elapsed();
    let ok = (0.318..=0.418).contains(&e.p_hat) && elapsed < Duration::from_secs(120);
    verdict(
        ok,
        format!("p_hat = {:.4} +/- {:.4}, predicted {:.4}, {:.1?}", e.p_hat, e.ci_halfwidth, e.predicted, elapsed),
    )
}

/// Instances large enough that the bound's precondition holds for some
/// patterns, and small enough for the orbit sweep.
fn mckay_instances() -> Vec<DegreeSequence> {
    vec![
        DegreeSequence::from_unsigned([vec![2, 2, 2], vec![1; 33]].concat(), 3),
        DegreeSequence::from_unsigned([vec![3, 3], vec![1; 33]].concat(), 3),
        DegreeSequence::from_unsigned([vec![3, 2, 2], vec![1; 32]].concat(), 3),
    ]
}

fn mckay_domination() -> Verdict {
    let guard = SearchGuard::with_max_space(BATTERY_SPACE);
    let mut compared = Vec::new();
    let mut violations = Vec::new();
    let mut battery_hits = 0;
    let instances: Vec<(bool, DegreeSequence)> = main_battery()
        .into_iter()
        .map(|d| (true, d))
        .chain(mckay_instances().into_iter().map(|d| (false, d)))
        .collect();
    for (in_battery, d) in &instances {
        for p in Pattern::ALL {
            let Ok(bound) = mckay_pattern_bound(d, p) else { continue };
            let exact = pattern_expectation(d, p, &guard).unwrap();
            if *in_battery {
                battery_hits += 1;
            }
            if exact > bound {
                violations.push(format!("{p:?} on {:?}", d.degrees()));
            }
            compared.push(format!(
                "{p:?}@n={}: {:.3e} <= {:.3e}",
                d.n(),
                rational_to_f64(&exact),
                rational_to_f64(&bound)
            ));
        }
    }
    verdict(
        violations.is_empty() && !compared.is_empty(),
        format!(
            "{} comparisons ({battery_hits} from the battery, where M <= 18 leaves the precondition unmet), violations {violations:?}; {}",
            compared.len(),
            compared.join(", ")
        ),
    )
}

fn summation_sandwich() -> Verdict {
    let mut rng = worker_rng(7, 0);
    let mut failures = 0;
    for _ in 0..100 {
        let n: usize = rng.random_range(2..=60);
        let c_hat: f64 = rng.random_range(0.001..(1.0 / 3.0));
        let c: Vec<f64> = (0..n).map(|_| rng.random_range(-c_hat..=c_hat)).collect();
        let a: Vec<f64> = (0..n)
            .map(|idx| {
                let lo = (idx as f64 * c[idx]).max(0.0);
                let hi = c_hat * n as f64;
                lo + rng.random_range(0.0..=1.0) * (hi - lo)
            })
            .collect();
        match sum_bounds(&a, &c, c_hat) {
            Ok(s) if s.sigma1 <= s.total && s.total <= s.sigma2 => {}
            _ => failures += 1,
        }
    }
    verdict(failures == 0, format!("100 random inputs, {failures} failures"))
}

fn sampler_uniformity() -> Verdict {
    let d = DegreeSequence::from_unsigned(vec![1; 6], 3);
    let mut index = HashMap::new();
    enumerate_bigraphs(&d, ClassFilter::All, &SearchGuard::default(), |g| {
        let next = index.len();
        index.insert(g.clone(), next);
    })
    .unwrap();
    let cells = index.len();
    let mut counts = vec![0u64; cells];
    let mut rng = worker_rng(31337, 0);
    let draws = 2000;
    for _ in 0..draws {
        let g = pairing_sample(&d, &mut rng, DEFAULT_RETRY_LIMIT).unwrap().graph;
        counts[index[&g]] += 1;
    }
    let expected = draws as f64 / cells as f64;
    let stat: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new((cells - 1) as f64).unwrap().inverse_cdf(0.999);
    verdict(
        cells == 20 && stat <= critical,
        format!("{cells} graphs, chi-square {stat:.2} vs critical {critical:.2} (df {})", cells - 1),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("exact small-instance counts", exact_small_counts),
        ("identity suite", identity_suite),
        ("estimates equal counts when corrections vanish", vanishing_corrections),
        ("two-cycle example classification", two_cycle_example),
        ("switching soundness sweep", switching_soundness),
        ("|C_1|/|C_0| leading ratio", leading_ratio),
        ("girth Monte Carlo", girth_monte_carlo),
        ("McKay bound domination", mckay_domination),
        ("summation sandwich", summation_sandwich),
        ("pairing sampler uniformity", sampler_uniformity),
    ];
    let mut failed = Vec::new();
    for (n, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name}: {}", n + 1, v.detail);
        if !v.pass {
            failed.push(n + 1);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
