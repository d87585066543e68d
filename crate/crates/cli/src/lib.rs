//! Command-line front end. JSON goes to stdout (or `--output`); everything
//! meant for humans goes to stderr.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fairkc_core::harness::{fast10_scaling, fast10_trials, ScalingRow, TrialStats};
use fairkc_core::io::{load_matrix, load_points_csv, matrix_to_text, points_to_csv};
use fairkc_core::{
    approx_fair_radii, brute_fair_kcenter, brute_kcenter, exact_fair_radii, generate, gonzalez,
    solve_exact22_with, solve_fast10_with, Error, GeneratorSpec, MetricInstance, MetricKind,
    RunReport, SolveOptions, SolveOutcome,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "fairkc", version, about = "Individually fair k-center solvers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print fairness radii as a JSON array.
    Radii(RadiiArgs),
    /// Run a solver and print a run report.
    Solve(SolveArgs),
    /// Exhaustive optimum for tiny instances (n <= 20).
    Oracle(OracleArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Repeated fast10 trials plus a wall-time scaling table.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[group(skip)]
pub struct Source {
    /// Points CSV, one point per row.
    #[arg(long, group = "source")]
    pub input: Option<PathBuf>,
    /// Distance matrix: `n`, then `n` rows of `n` values.
    #[arg(long, group = "source")]
    pub matrix: Option<PathBuf>,
    /// Generator spec, e.g. `uniform_box:n=600,dim=2,seed=1`.
    #[arg(long = "gen", group = "source", value_name = "SPEC")]
    pub generator: Option<String>,
    /// Metric for `--input` points.
    #[arg(long, default_value = "euclidean")]
    pub metric: MetricArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Euclidean,
    Manhattan,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Euclidean => MetricKind::Euclidean,
            MetricArg::Manhattan => MetricKind::Manhattan,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Exact22,
    Fast10,
    Gonzalez,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadiiModeArg {
    Exact,
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFormat {
    Csv,
    Matrix,
}

#[derive(Debug, Args)]
pub struct Randomness {
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct RadiiArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "exact")]
    pub radii_mode: RadiiModeArg,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k: usize,
    /// Fairness factor; required except for gonzalez.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value = "exact22")]
    pub algorithm: AlgorithmArg,
    #[command(flatten)]
    pub random: Randomness,
    /// Top the center set up to exactly k.
    #[arg(long)]
    pub pad_to_k: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).multiple(false)))]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long)]
    pub k: usize,
    /// Omit for unconstrained k-center.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long = "gen", value_name = "SPEC")]
    pub generator: String,
    #[arg(long, default_value = "csv")]
    pub format: GenFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("bench_source").multiple(false)))]
pub struct BenchArgs {
    /// Instance for the repeated trials (default: 600 uniform 2-D points).
    #[arg(long, group = "bench_source")]
    pub input: Option<PathBuf>,
    #[arg(long, group = "bench_source")]
    pub matrix: Option<PathBuf>,
    #[arg(long = "gen", group = "bench_source", value_name = "SPEC")]
    pub generator: Option<String>,
    #[arg(long, default_value = "euclidean")]
    pub metric: MetricArg,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[command(flatten)]
    pub random: Randomness,
    /// Number of seeds, starting at `--seed`.
    #[arg(long, default_value_t = 20)]
    pub trials: u64,
    /// Instance sizes for the scaling table.
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000,4000")]
    pub sizes: Vec<usize>,
    /// Timed repetitions per size; the fastest is kept.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub seed: u64,
    pub trials: TrialStats,
    pub scaling: Vec<ScalingRow>,
}

/// Exit code for an error raised while running a command.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return if e.is_data_error() { EXIT_DATA } else { EXIT_USAGE };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return EXIT_DATA;
        }
    }
    EXIT_USAGE
}

/// Runs a parsed command line, returning the process exit code.
pub fn run(cli: Cli) -> u8 {
    match dispatch(cli.command) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code(&err)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Radii(a) => radii(a),
        Command::Solve(a) => solve(a),
        Command::Oracle(a) => oracle(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => bench(a),
    }
}

fn load(
    input: Option<&Path>,
    matrix: Option<&Path>,
    spec: Option<&str>,
    metric: MetricArg,
) -> anyhow::Result<MetricInstance> {
    let inst = match (input, matrix, spec) {
        (Some(path), None, None) => load_points_csv(path, metric.into())
            .with_context(|| format!("loading {}", path.display()))?,
        (None, Some(path), None) => {
            load_matrix(path).with_context(|| format!("loading {}", path.display()))?
        }
        (None, None, Some(spec)) => generate(&GeneratorSpec::parse(spec)?)?,
        _ => bail!("exactly one of --input, --matrix, --gen is required"),
    };
    Ok(inst)
}

fn load_source(s: &Source) -> anyhow::Result<MetricInstance> {
    load(
        s.input.as_deref(),
        s.matrix.as_deref(),
        s.generator.as_deref(),
        s.metric,
    )
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json(value: &impl Serialize, output: Option<&Path>) -> anyhow::Result<()> {
    emit(&serde_json::to_string_pretty(value)?, output)
}

fn radii(a: RadiiArgs) -> anyhow::Result<()> {
    let inst = load_source(&a.source)?;
    let values = match a.radii_mode {
        RadiiModeArg::Exact => Some(exact_fair_radii(&inst, a.k)?.into_values()),
        RadiiModeArg::Approx => {
            let res = approx_fair_radii(&inst, a.k, a.delta, a.seed)?;
            eprintln!(
                "approx radii: {} exact computations{}",
                res.exact_computations,
                if res.is_fail() { ", sampling failure detected" } else { "" }
            );
            res.radii.map(|r| r.into_values())
        }
    };
    // a detected sampling failure prints `null`
    emit_json(&values, a.output.as_deref())
}

fn solve(a: SolveArgs) -> anyhow::Result<()> {
    let inst = load_source(&a.source)?;
    let options = SolveOptions {
        pad_to_k: a.pad_to_k,
    };
    let alpha = match (a.algorithm, a.alpha) {
        (AlgorithmArg::Gonzalez, alpha) => alpha,
        (_, Some(alpha)) => Some(alpha),
        (_, None) => bail!("--alpha is required for {:?}", a.algorithm),
    };
    let start = Instant::now();
    let outcome = match a.algorithm {
        AlgorithmArg::Exact22 => solve_exact22_with(&inst, a.k, alpha.unwrap(), options)?,
        AlgorithmArg::Fast10 => solve_fast10_with(
            &inst,
            a.k,
            alpha.unwrap(),
            a.random.epsilon,
            a.random.delta,
            a.random.seed,
            options,
        )?,
        AlgorithmArg::Gonzalez => {
            let mut s = gonzalez(&inst, a.k)?;
            s.meta.alpha = alpha;
            SolveOutcome::Solved(s)
        }
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;

    // fairness ratios are always reported against exact radii
    let exact = match outcome.solution() {
        Some(s) if s.fairness_ratios.is_none() => Some(exact_fair_radii(&inst, a.k)?),
        _ => None,
    };
    let report = RunReport::from_outcome(&inst, &outcome, exact.as_ref(), wall_ms)?;
    eprintln!(
        "{}: n={} k={} centers={} cost={} fail={} feasible={}{}",
        report.algorithm.as_str(),
        report.n,
        report.k,
        report.centers.len(),
        report.cost.map_or("-".into(), |c| c.to_string()),
        report.fail,
        report.feasible.map_or("unknown".into(), |f| f.to_string()),
        if report.delegated { " (delegated to exact22)" } else { "" },
    );
    emit(&report.to_json()?, a.output.as_deref())
}

fn oracle(a: OracleArgs) -> anyhow::Result<()> {
    let inst = load_source(&a.source)?;
    let result = match a.alpha {
        Some(alpha) => brute_fair_kcenter(&inst, a.k, alpha)?,
        None => brute_kcenter(&inst, a.k)?,
    };
    emit_json(&result, a.output.as_deref())
}

fn gen(a: GenArgs) -> anyhow::Result<()> {
    let inst = generate(&GeneratorSpec::parse(&a.generator)?)?;
    let text = match a.format {
        GenFormat::Csv => points_to_csv(&inst).context("generated instance has no coordinates")?,
        GenFormat::Matrix => matrix_to_text(&inst),
    };
    emit(&text, a.output.as_deref())
}

fn bench(a: BenchArgs) -> anyhow::Result<()> {
    let default_spec = format!("uniform_box:n=600,dim=2,seed={}", a.random.seed);
    let spec = match (&a.input, &a.matrix, &a.generator) {
        (None, None, None) => Some(default_spec.as_str()),
        _ => a.generator.as_deref(),
    };
    let inst = load(a.input.as_deref(), a.matrix.as_deref(), spec, a.metric)?;
    let Randomness {
        epsilon,
        delta,
        seed,
    } = a.random;

    let trials = fast10_trials(&inst, a.k, a.alpha, epsilon, delta, seed..seed + a.trials)?;
    eprintln!(
        "trials: {} solved, {} fail, {} no-feasible of {}",
        trials.solved, trials.fail, trials.no_feasible, trials.trials
    );
    let scaling = fast10_scaling(&a.sizes, a.k, a.alpha, epsilon, delta, seed, a.reps)?;
    eprintln!("{:>8} {:>12} {:>8}", "n", "wall_ms", "ratio");
    for row in &scaling {
        eprintln!(
            "{:>8} {:>12.3} {:>8}",
            row.n,
            row.wall_ms,
            row.ratio_to_previous.map_or("-".into(), |r| format!("{r:.2}"))
        );
    }
    let report = BenchReport {
        n: inst.len(),
        k: a.k,
        alpha: a.alpha,
        epsilon,
        delta,
        seed,
        trials,
        scaling,
    };
    emit_json(&report, a.output.as_deref())
}
