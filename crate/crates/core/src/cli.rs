//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal identity violation, 2 bad input.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use crate::asymptotics::{
    estimate_bigraph, estimate_linear, estimate_simple, girth6_probability, switching_ratio, Estimate,
};
use crate::bigraph::{classify, BipartiteGraph, BipartiteGraphJson};
use crate::degree::{DegreeSequence, DegreeSequenceJson};
use crate::error::{Error, Result};
use crate::oracle::{battery, c1_over_c0, census, full_report, random_instances, SearchGuard};
use crate::switching::{
    apply_forward, apply_reverse, forward_tuples, monte_carlo_girth, pairing_sample, sample_no4cycle,
    worker_rng, DEFAULT_RETRY_LIMIT,
};

/// Seed used by randomized commands when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 42;
/// Random streams used by Monte Carlo commands when `--workers` is absent.
pub const DEFAULT_STREAMS: usize = 8;
/// Search-space bound used by `verify` when `--max-space` is absent.
pub const VERIFY_DEFAULT_SPACE: f64 = 1e9;

#[derive(Debug, Parser)]
#[command(name = "linhyper", version, about = "Count, estimate and sample uniform hypergraphs with given degrees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleMode {
    /// Uniform conforming graph from the pairing model.
    Pairing,
    /// Graph with no 4-cycle, reached by switchings (approximately uniform).
    Switching,
}

/// Degree sequence given inline or as a JSON file `{"r": 3, "k": [...]}`.
/// Inline values win over the file.
#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Edge size r.
    #[arg(short = 'r')]
    pub r: Option<i64>,
    /// Comma-separated degrees, e.g. 2,2,1,1.
    #[arg(short = 'k', value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Option<Vec<i64>>,
    /// JSON file holding a degree sequence.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl InstanceArgs {
    pub fn resolve(&self) -> Result<DegreeSequence> {
        let file = match &self.input {
            Some(path) => Some(read_json::<DegreeSequenceJson>(path)?),
            None => None,
        };
        let r = self.r.or(file.as_ref().map(|f| f.r));
        let k = self.k.clone().or(file.map(|f| f.k));
        match (r, k) {
            (Some(r), Some(k)) => DegreeSequence::new(&k, r),
            _ => Err(Error::InvalidInput(
                "give a degree sequence with -r and -k, or with --input".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads (and, for Monte Carlo, random streams; default 8).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact counts by exhaustive enumeration.
    Exact {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Bound on the estimated search space, replacing the default M <= 16, n <= 10 limits.
        #[arg(long)]
        max_space: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Closed-form estimates with their error scales.
    Estimate {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        output: Output,
    },
    /// 4-cycles and class membership of a bipartite graph read from JSON.
    Classify {
        /// Graph JSON: {"n_left", "n_right", "edges": [[v, e], ...]} (1-based).
        #[arg(long)]
        input: PathBuf,
        /// Edge size; defaults to the common right degree of the graph.
        #[arg(short = 'r')]
        r: Option<i64>,
    },
    /// Draw one random graph.
    Sample {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "switching")]
        mode: SampleMode,
        /// Cap on candidate draws spent on switchings.
        #[arg(long, default_value_t = 100_000)]
        max_steps: u64,
        #[arg(long, default_value_t = DEFAULT_RETRY_LIMIT)]
        retry_limit: u64,
    },
    /// Monte Carlo probability of having no 4-cycle, next to the prediction.
    Girth {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_RETRY_LIMIT)]
        retry_limit: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Exact counts against estimates over a battery of small instances.
    Verify {
        /// Largest number of left vertices.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Edge sizes to include.
        #[arg(long = "r-values", value_delimiter = ',', default_value = "3")]
        r_values: Vec<u64>,
        /// Largest degree.
        #[arg(long, default_value_t = 3)]
        k_max: u64,
        /// Extra random instances (n <= max_n + 1, zero degrees allowed).
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also report |C_1|/|C_0| against its leading-order prediction.
        #[arg(long)]
        ratio_check: bool,
        /// Bound on the estimated search space per instance (default 1e9).
        #[arg(long)]
        max_space: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

/// Text for stdout plus whether an identity check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub identity_failure: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, identity_failure: false }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantViolation(_) => 1,
        _ => 2,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

/// Formats a float with 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{e}")
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let workers = match &cli.command {
        Command::Exact { output, .. }
        | Command::Estimate { output, .. }
        | Command::Girth { output, .. }
        | Command::Verify { output, .. } => output.workers,
        _ => None,
    };
    match workers {
        Some(0) => Err(Error::InvalidInput("--workers must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot start {n} workers: {e}")))?
            .install(|| dispatch(cli.command)),
        None => dispatch(cli.command),
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Exact { instance, max_space, output } => cmd_exact(&instance.resolve()?, max_space, output.format),
        Command::Estimate { instance, output } => cmd_estimate(&instance.resolve()?, output.format),
        Command::Classify { input, r } => cmd_classify(&input, r),
        Command::Sample { instance, seed, mode, max_steps, retry_limit } => {
            cmd_sample(&instance.resolve()?, seed, mode, max_steps, retry_limit)
        }
        Command::Girth { instance, seed, trials, retry_limit, output } => cmd_girth(
            &instance.resolve()?,
            seed,
            trials,
            output.workers.unwrap_or(DEFAULT_STREAMS),
            retry_limit,
            output.format,
        ),
        Command::Verify { max_n, r_values, k_max, random, seed, ratio_check, max_space, output } => {
            let config = VerifyConfig {
                max_n,
                r_values,
                k_max,
                random,
                seed,
                ratio_check,
                max_space: max_space.unwrap_or(VERIFY_DEFAULT_SPACE),
            };
            cmd_verify(&config, output.format)
        }
    }
}

fn guard_for(max_space: Option<f64>) -> SearchGuard {
    max_space.map_or_else(SearchGuard::default, SearchGuard::with_max_space)
}

pub fn cmd_exact(ds: &DegreeSequence, max_space: Option<f64>, format: Format) -> Result<Outcome> {
    let report = full_report(ds, &guard_for(max_space))?.to_json(ds);
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => csv_text(
            &["r", "k", "count_b", "count_b0", "count_bplus", "count_h", "count_l", "cd_profile"],
            &[vec![
                report.r.to_string(),
                join(&report.k),
                report.count_b,
                report.count_b0,
                report.count_bplus,
                report.count_h,
                report.count_l,
                join(&report.cd_profile),
            ]],
        ),
    }))
}

#[derive(Debug, Serialize)]
struct NamedEstimate {
    formula: &'static str,
    #[serde(flatten)]
    estimate: Estimate,
}

pub fn cmd_estimate(ds: &DegreeSequence, format: Format) -> Result<Outcome> {
    let rows = vec![
        NamedEstimate { formula: "linear", estimate: estimate_linear(ds)? },
        NamedEstimate { formula: "simple", estimate: estimate_simple(ds)? },
        NamedEstimate { formula: "bigraph", estimate: estimate_bigraph(ds)? },
        NamedEstimate { formula: "girth6", estimate: girth6_probability(ds)? },
    ];
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&rows),
        Format::Csv => csv_text(
            &["formula", "log_value", "value", "error_scale"],
            &rows
                .iter()
                .map(|row| {
                    vec![
                        row.formula.to_string(),
                        fmt_num(row.estimate.log_value),
                        fmt_num(row.estimate.value),
                        fmt_num(row.estimate.error_scale),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    }))
}

pub fn cmd_classify(input: &PathBuf, r: Option<i64>) -> Result<Outcome> {
    let graph = BipartiteGraph::from_json(&read_json::<BipartiteGraphJson>(input)?)?;
    let rights = graph.right_degrees();
    let r = match r {
        Some(r) => r,
        None => match rights.first() {
            Some(&first) if rights.iter().all(|&x| x == first) => first as i64,
            Some(_) => {
                return Err(Error::InvalidInput(
                    "right vertices have different degrees; pass -r".into(),
                ))
            }
            None => return Err(Error::InvalidInput("graph has no right vertices; pass -r".into())),
        },
    };
    let k: Vec<i64> = graph.left_degrees().into_iter().map(|x| x as i64).collect();
    let ds = DegreeSequence::new(&k, r)?;
    Ok(Outcome::ok(to_json(&classify(&graph, &ds)?.to_json())))
}

#[derive(Debug, Serialize)]
struct SampleReport {
    graph: BipartiteGraphJson,
    metadata: SampleMetadata,
}

#[derive(Debug, Serialize)]
struct SampleMetadata {
    seed: u64,
    mode: &'static str,
    steps: u64,
    rejections: u64,
    d_trajectory: Vec<usize>,
    approximately_uniform: bool,
}

pub fn cmd_sample(
    ds: &DegreeSequence,
    seed: u64,
    mode: SampleMode,
    max_steps: u64,
    retry_limit: u64,
) -> Result<Outcome> {
    let mut rng = worker_rng(seed, 0);
    let report = match mode {
        SampleMode::Pairing => {
            let s = pairing_sample(ds, &mut rng, retry_limit)?;
            let d = crate::bigraph::four_cycles(&s.graph).len();
            SampleReport {
                graph: s.graph.to_json(),
                metadata: SampleMetadata {
                    seed,
                    mode: "pairing",
                    steps: 0,
                    rejections: s.rejections,
                    d_trajectory: vec![d],
                    approximately_uniform: false,
                },
            }
        }
        SampleMode::Switching => {
            let s = sample_no4cycle(ds, &mut rng, max_steps, retry_limit)?;
            SampleReport {
                graph: s.graph.to_json(),
                metadata: SampleMetadata {
                    seed,
                    mode: "switching",
                    steps: s.steps,
                    rejections: s.rejections,
                    d_trajectory: s.d_trajectory,
                    approximately_uniform: s.approximately_uniform,
                },
            }
        }
    };
    Ok(Outcome::ok(to_json(&report)))
}

pub fn cmd_girth(
    ds: &DegreeSequence,
    seed: u64,
    trials: u64,
    streams: usize,
    retry_limit: u64,
    format: Format,
) -> Result<Outcome> {
    let e = monte_carlo_girth(ds, seed, trials, streams, retry_limit)?;
    Ok(Outcome::ok(match format {
        Format::Json => to_json(&e),
        Format::Csv => csv_text(
            &["p_hat", "ci_halfwidth", "trials", "predicted", "seed", "workers"],
            &[vec![
                fmt_num(e.p_hat),
                fmt_num(e.ci_halfwidth),
                e.trials.to_string(),
                fmt_num(e.predicted),
                e.seed.to_string(),
                e.workers.to_string(),
            ]],
        ),
    }))
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub r_values: Vec<u64>,
    pub k_max: u64,
    pub random: usize,
    pub seed: u64,
    pub ratio_check: bool,
    pub max_space: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub r: u64,
    pub k: Vec<u64>,
    pub count_l: String,
    pub estimate: f64,
    /// Exact count over estimate.
    pub ratio: f64,
    pub error_scale: f64,
    pub identities_ok: bool,
    pub involution_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1_over_c0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Applies every forward switching of a few sampled graphs and checks that
/// the reverse switching restores the graph.
fn involution_spot_check(ds: &DegreeSequence, seed: u64) -> Result<bool> {
    if ds.total() == 0 {
        return Ok(true);
    }
    let mut rng = worker_rng(seed, 0);
    for _ in 0..3 {
        let Ok(s) = pairing_sample(ds, &mut rng, 10_000) else { return Ok(true) };
        for t in forward_tuples(&s.graph, false) {
            if let Ok(after) = apply_forward(&s.graph, &t) {
                if apply_reverse(&after, &t)? != s.graph {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn verify_rows(config: &VerifyConfig) -> Result<Vec<VerifyRow>> {
    let guard = SearchGuard::with_max_space(config.max_space);
    let mut instances: Vec<DegreeSequence> = battery(config.max_n, &config.r_values, config.k_max)
        .into_iter()
        .filter(|ds| guard.admits(ds))
        .collect();
    if config.random > 0 && !config.r_values.is_empty() {
        let mut rng = worker_rng(config.seed, 1);
        instances.extend(random_instances(
            &mut rng,
            config.random,
            config.max_n + 1,
            &config.r_values,
            config.k_max,
            &guard,
        ));
    }
    if instances.is_empty() {
        return Err(Error::InvalidInput(
            "the battery is empty; relax --max-n, --r-values, --k-max or --max-space".into(),
        ));
    }
    let mut rows = Vec::with_capacity(instances.len());
    for ds in &instances {
        let est = estimate_linear(ds)?;
        let (identities_ok, count_l, note, c1c0) = match full_report(ds, &guard) {
            Ok(rep) => {
                let c1c0 = if config.ratio_check {
                    census(ds, &guard).ok().and_then(|c| c1_over_c0(&c))
                } else {
                    None
                };
                (true, rep.count_l, None, c1c0)
            }
            Err(Error::InvariantViolation(msg)) => (false, Zero::zero(), Some(msg), None),
            Err(e) => return Err(e),
        };
        let exact = crate::asymptotics::rational_to_f64(&num_rational::BigRational::from_integer(
            count_l.clone().into(),
        ));
        rows.push(VerifyRow {
            r: ds.r(),
            k: ds.degrees().to_vec(),
            count_l: count_l.to_string(),
            estimate: est.value,
            ratio: exact / est.value,
            error_scale: est.error_scale,
            identities_ok,
            involution_ok: involution_spot_check(ds, config.seed)?,
            c1_over_c0: c1c0,
            predicted_ratio: config
                .ratio_check
                .then(|| if ds.total() > 0 { switching_ratio(ds, 1) } else { 0.0 }),
            note,
        });
    }
    Ok(rows)
}

pub fn cmd_verify(config: &VerifyConfig, format: Format) -> Result<Outcome> {
    let rows = verify_rows(config)?;
    let failed = rows.iter().any(|r| !r.identities_ok || !r.involution_ok);
    let stdout = match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut header = vec!["r", "k", "count_l", "estimate", "ratio", "error_scale", "identities_ok", "involution_ok"];
            if config.ratio_check {
                header.extend(["c1_over_c0", "predicted_ratio"]);
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    let mut out = vec![
                        row.r.to_string(),
                        join(&row.k),
                        row.count_l.clone(),
                        fmt_num(row.estimate),
                        fmt_num(row.ratio),
                        fmt_num(row.error_scale),
                        row.identities_ok.to_string(),
                        row.involution_ok.to_string(),
                    ];
                    if config.ratio_check {
                        out.push(row.c1_over_c0.map_or_else(String::new, fmt_num));
                        out.push(row.predicted_ratio.map_or_else(String::new, fmt_num));
                    }
                    out
                })
                .collect();
            csv_text(&header, &body)
        }
    };
    Ok(Outcome { stdout, identity_failure: failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_num(10.0), "10");
        assert_eq!(fmt_num(0.36787944117144233), "0.367879441171");
        assert_eq!(fmt_num(1.5e20), "1.5e20");
        assert_eq!(fmt_num(-2.25), "-2.25");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(0.0), "0");
    }

    #[test]
    fn inline_degrees_win_over_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ds.json");
        std::fs::write(&path, r#"{"r": 4, "k": [1, 1, 1, 1]}"#).unwrap();
        let args = InstanceArgs { r: None, k: None, input: Some(path.clone()) };
        assert_eq!(args.resolve().unwrap(), DegreeSequence::new(&[1, 1, 1, 1], 4).unwrap());
        let args = InstanceArgs { r: Some(3), k: Some(vec![1; 6]), input: Some(path) };
        assert_eq!(args.resolve().unwrap(), DegreeSequence::new(&[1; 6], 3).unwrap());
    }
}
