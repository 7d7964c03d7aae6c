//! Command-line interface: `gen`, `dist`, `symtest`, `bound`, `power`,
//! and `nemirovski` subcommands wiring the library into reproducible
//! experiments.
//!
//! Every stochastic subcommand requires `--seed` and is a pure function of
//! its flags: reruns emit byte-identical documents, regardless of
//! `--workers`. Execution-only flags (`--out`, `--format`, `--workers`,
//! `--timestamp`) are therefore excluded from the config echo.
//!
//! Exit codes: 0 on success, 2 for usage, validation, or I/O errors, 1 for
//! internal errors (panics).

use crate::bounds::{
    compare_symmetrization_bounds_data, compare_symmetrization_bounds_generator, nemirovski_bounds,
    BoundConfig, BoundReport, CorrectionEstimator,
};
use crate::io::{
    cloud_to_csv, read_cloud, write_result, write_text, ConfigValue, OutputFormat, ResultDocument,
    Table,
};
use crate::metric::MetricKind;
use crate::rng::stream_seed;
use crate::simgen::{gen_rademacher, GeneratorKind, GeneratorSpec};
use crate::symtest::{mardia_skewness_test, permutation_symmetry_test, SymTestConfig};
use crate::wasserstein::{empirical_wasserstein, PointCloud, WassersteinOrder};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

/// Empirical Wasserstein distances, symmetry testing, and symmetrization
/// bounds.
#[derive(Debug, Parser)]
#[command(name = "wasym", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to this path instead of stdout ("-" for stdout).
    #[arg(long, global = true)]
    out: Option<String>,

    /// Result document format (`gen` always emits CSV clouds).
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Worker threads for replication loops (default: all cores). Output
    /// is identical for any worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Stamp the document with completion time (unix seconds). Off by
    /// default so that reruns are byte-identical.
    #[arg(long, global = true)]
    timestamp: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a point cloud and emit it as CSV.
    Gen(GenArgs),
    /// Empirical Wasserstein distance between two CSV clouds.
    Dist(DistArgs),
    /// Bootstrap-permutation test for symmetry about the origin.
    Symtest(SymtestArgs),
    /// Compare the classical and corrected symmetrization bounds.
    Bound(BoundArgs),
    /// Power of the symmetry test across Rademacher asymmetry levels.
    Power(PowerArgs),
    /// Compare the classical and corrected l-infinity mean bounds.
    Nemirovski(NemirovskiArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Distribution: rademacher | mixture | beta.
    #[arg(long)]
    kind: String,
    /// Rows (observations).
    #[arg(long)]
    n: usize,
    /// Columns (dimension).
    #[arg(long)]
    d: usize,
    /// Rademacher success probability (rademacher only; default 0.5).
    #[arg(long)]
    p: Option<f64>,
    /// Beta shape parameter (beta only; default 1.0).
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
struct DistArgs {
    /// First cloud (CSV).
    #[arg(long)]
    x: PathBuf,
    /// Second cloud (CSV); must have the same number of rows as --x.
    #[arg(long)]
    y: PathBuf,
    /// Wasserstein order: 1 | 2.
    #[arg(long, default_value = "2")]
    p: String,
    /// Ground metric: l1 | l2 | linf.
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Skip one header row in both inputs.
    #[arg(long)]
    header: bool,
}

#[derive(Debug, Args)]
struct SymtestArgs {
    /// Input cloud (CSV).
    #[arg(long)]
    input: PathBuf,
    /// Skip one header row.
    #[arg(long)]
    header: bool,
    /// Bootstrap replications.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Permutations per replication.
    #[arg(long, default_value_t = 200)]
    m_perms: usize,
    /// Wasserstein order: 1 | 2.
    #[arg(long, default_value = "1")]
    p: String,
    /// Ground metric: l1 | l2 | linf.
    #[arg(long, default_value = "l1")]
    metric: String,
    /// Subsample this many rows (without replacement) per replication.
    #[arg(long)]
    subsample: Option<usize>,
    /// Tie handling: inclusive | strict.
    #[arg(long, default_value = "inclusive")]
    tie_rule: String,
    /// Center the data at its sample mean first.
    #[arg(long)]
    center: bool,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Generator: rademacher | mixture | beta.
    #[arg(long, conflicts_with = "input")]
    generator: Option<String>,
    /// Fixed input cloud (CSV) instead of a generator.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Skip one header row of --input.
    #[arg(long, requires = "input")]
    header: bool,
    /// Rademacher success probability for --generator rademacher.
    #[arg(long, conflicts_with = "input")]
    gen_p: Option<f64>,
    /// Beta shape parameter for --generator beta.
    #[arg(long, conflicts_with = "input")]
    gen_alpha: Option<f64>,
    /// Dimension for generated samples.
    #[arg(long, default_value_t = 2, conflicts_with = "input")]
    d: usize,
    /// Comma-separated sample sizes.
    #[arg(long, default_value = "2,4,8,16,32,64,128,256", conflicts_with = "input")]
    n_grid: String,
    /// Independent samples per grid point.
    #[arg(long, default_value_t = 2000, conflicts_with = "input")]
    reps: usize,
    /// Norm of the bounded quantity: l1 | l2 | linf.
    #[arg(long, default_value = "l2")]
    metric: String,
    /// Wasserstein order of the correction: 1 | 2.
    #[arg(long, default_value = "2")]
    p: String,
    /// Correction estimator: split | bootstrap.
    #[arg(long, default_value = "split")]
    estimator: String,
    /// Rademacher sign draws per sample.
    #[arg(long, default_value_t = 100)]
    sign_draws: usize,
    /// Correction-estimator replications per sample (default: 1 in
    /// generator mode, 8 in data mode).
    #[arg(long)]
    correction_reps: Option<usize>,
    /// Bootstrap resample size (default: half the sample).
    #[arg(long)]
    bootstrap_m: Option<usize>,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
struct PowerArgs {
    /// Comma-separated Rademacher success probabilities.
    #[arg(long, default_value = "0.5,0.6,0.7,0.8")]
    p_grid: String,
    /// Sample size per simulated dataset.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Dimension of the Rademacher data.
    #[arg(long, default_value_t = 5)]
    d: usize,
    /// Simulated datasets per grid point.
    #[arg(long, default_value_t = 200)]
    sims: usize,
    /// Rejection level.
    #[arg(long, default_value_t = 0.05)]
    level: f64,
    /// Test replications (symtest --r).
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Permutations per replication (symtest --m-perms).
    #[arg(long, default_value_t = 200)]
    m_perms: usize,
    /// Wasserstein order of the test statistic: 1 | 2.
    #[arg(long, default_value = "1")]
    wp: String,
    /// Ground metric of the test statistic: l1 | l2 | linf.
    #[arg(long, default_value = "l1")]
    metric: String,
    /// Tie handling: inclusive | strict.
    #[arg(long, default_value = "inclusive")]
    tie_rule: String,
    /// Subsample size per replication.
    #[arg(long)]
    subsample: Option<usize>,
    /// Center each dataset at its sample mean first.
    #[arg(long)]
    center: bool,
    /// Also report the power of Mardia's skewness test on the same data.
    #[arg(long)]
    with_mardia: bool,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
struct NemirovskiArgs {
    /// Comma-separated dimensions.
    #[arg(long, default_value = "5,25,50", conflicts_with = "input")]
    d_grid: String,
    /// Sample size per replication.
    #[arg(long, default_value_t = 10, conflicts_with = "input")]
    n: usize,
    /// Comma-separated shifted-Beta shape parameters.
    #[arg(long, default_value = "0.5,1,2", conflicts_with = "input")]
    alpha_grid: String,
    /// Sample replications per (d, alpha) cell.
    #[arg(long, default_value_t = 2000, conflicts_with = "input")]
    reps: usize,
    /// Fixed input cloud (CSV) instead of the generator grid.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Skip one header row of --input.
    #[arg(long, requires = "input")]
    header: bool,
    /// Resample size of the reflection-distance bootstrap.
    #[arg(long, default_value_t = 5)]
    w2_m: usize,
    #[arg(long)]
    seed: u64,
}

/// Process entry point: parse, dispatch, and map errors to exit codes.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match catch_unwind(AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(_) => {
            eprintln!("error: internal failure, see panic message above");
            1
        }
    }
}

/// Execution-only output options shared by every subcommand.
struct OutputOptions {
    out: Option<PathBuf>,
    format: OutputFormat,
    timestamp: bool,
}

fn dispatch(cli: Cli) -> Result<()> {
    let opts = OutputOptions {
        out: match cli.out.as_deref() {
            None | Some("-") => None,
            Some(path) => Some(PathBuf::from(path)),
        },
        format: cli.format.parse()?,
        timestamp: cli.timestamp,
    };
    let run = || match cli.command {
        Command::Gen(args) => run_gen(&args, &opts),
        Command::Dist(args) => run_dist(&args, &opts),
        Command::Symtest(args) => run_symtest(&args, &opts),
        Command::Bound(args) => run_bound(&args, &opts),
        Command::Power(args) => run_power(&args, &opts),
        Command::Nemirovski(args) => run_nemirovski(&args, &opts),
    };
    match cli.workers {
        Some(workers) => {
            if workers == 0 {
                return Err(Error::invalid("--workers must be >= 1"));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::invalid(format!("cannot build worker pool: {e}")))?;
            pool.install(run)
        }
        None => run(),
    }
}

fn emit(mut doc: ResultDocument, opts: &OutputOptions) -> Result<()> {
    if opts.timestamp {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_else(|_| "0".to_string());
        doc.timestamp = Some(now);
    }
    write_result(&doc, opts.format, opts.out.as_deref())
}

fn make_generator(kind: &str, p: Option<f64>, alpha: Option<f64>) -> Result<GeneratorKind> {
    let kind = match kind {
        "rademacher" => GeneratorKind::Rademacher {
            p: p.unwrap_or(0.5),
        },
        "mixture" => GeneratorKind::GaussMixture,
        "beta" => GeneratorKind::ShiftedBeta {
            alpha: alpha.unwrap_or(1.0),
        },
        other => {
            return Err(Error::invalid(format!(
                "unknown generator {other:?}; expected rademacher, mixture, or beta"
            )))
        }
    };
    if p.is_some() && !matches!(kind, GeneratorKind::Rademacher { .. }) {
        return Err(Error::invalid("a success probability applies only to rademacher"));
    }
    if alpha.is_some() && !matches!(kind, GeneratorKind::ShiftedBeta { .. }) {
        return Err(Error::invalid("a shape parameter applies only to beta"));
    }
    Ok(kind)
}

fn parse_f64_grid(text: &str, flag: &str) -> Result<Vec<f64>> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("{flag}: cannot parse {:?}", s.trim())))
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("{flag} must be nonempty and finite")));
    }
    Ok(values)
}

fn parse_usize_grid(text: &str, flag: &str) -> Result<Vec<usize>> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("{flag}: cannot parse {:?}", s.trim())))
        })
        .collect::<Result<Vec<usize>>>()?;
    if values.is_empty() || values.contains(&0) {
        return Err(Error::invalid(format!("{flag} entries must be >= 1")));
    }
    Ok(values)
}

fn grid_echo<T: std::fmt::Display>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run_gen(args: &GenArgs, opts: &OutputOptions) -> Result<()> {
    let kind = make_generator(&args.kind, args.p, args.alpha)?;
    let cloud = GeneratorSpec {
        kind,
        n: args.n,
        d: args.d,
        seed: args.seed,
    }
    .generate()?;
    write_text(opts.out.as_deref(), &cloud_to_csv(&cloud))
}

fn run_dist(args: &DistArgs, opts: &OutputOptions) -> Result<()> {
    let p: WassersteinOrder = args.p.parse()?;
    let metric: MetricKind = args.metric.parse()?;
    let x = read_cloud(&args.x, args.header)?;
    let y = read_cloud(&args.y, args.header)?;
    let distance = empirical_wasserstein(&x, &y, p, metric)?;

    let mut doc = ResultDocument::new("dist");
    doc.push_config("x", ConfigValue::Text(args.x.display().to_string()));
    doc.push_config("y", ConfigValue::Text(args.y.display().to_string()));
    doc.push_config("p", ConfigValue::UInt(p.p() as u64));
    doc.push_config("metric", ConfigValue::Text(metric.as_str().to_string()));
    doc.push_config("header", ConfigValue::Bool(args.header));
    doc.push_result("distance", distance);
    emit(doc, opts)
}

fn run_symtest(args: &SymtestArgs, opts: &OutputOptions) -> Result<()> {
    let cfg = SymTestConfig {
        r: args.r,
        m_perms: args.m_perms,
        p: args.p.parse()?,
        metric: args.metric.parse()?,
        subsample: args.subsample,
        tie_rule: args.tie_rule.parse()?,
        center: args.center,
        seed: args.seed,
    };
    let x = read_cloud(&args.input, args.header)?;
    let report = permutation_symmetry_test(&x, &cfg)?;

    let mut doc = ResultDocument::new("symtest");
    doc.push_config("input", ConfigValue::Text(args.input.display().to_string()));
    doc.push_config("header", ConfigValue::Bool(args.header));
    doc.push_config("r", ConfigValue::UInt(cfg.r as u64));
    doc.push_config("m_perms", ConfigValue::UInt(cfg.m_perms as u64));
    doc.push_config("p", ConfigValue::UInt(cfg.p.p() as u64));
    doc.push_config("metric", ConfigValue::Text(cfg.metric.as_str().to_string()));
    if let Some(s) = cfg.subsample {
        doc.push_config("subsample", ConfigValue::UInt(s as u64));
    }
    doc.push_config("tie_rule", ConfigValue::Text(cfg.tie_rule.to_string()));
    doc.push_config("center", ConfigValue::Bool(cfg.center));
    doc.push_config("seed", ConfigValue::UInt(cfg.seed));
    doc.push_result("p_value", report.p_value);
    doc.table = Some(Table {
        columns: vec!["replication".into(), "p_value".into(), "omega0".into()],
        rows: report
            .per_replication_p
            .iter()
            .zip(&report.omega0_per_replication)
            .enumerate()
            .map(|(j, (pj, w0))| vec![j as f64, *pj, *w0])
            .collect(),
    });
    emit(doc, opts)
}

const BOUND_COLUMNS: [&str; 7] = ["n", "lhs", "R_n", "C_n", "old_bound", "new_bound", "mc_std_error"];

fn bound_row(n: usize, rep: &BoundReport) -> Vec<f64> {
    vec![
        n as f64,
        rep.lhs,
        rep.r_n,
        rep.c_n,
        rep.old_bound,
        rep.new_bound,
        rep.mc_std_error,
    ]
}

fn run_bound(args: &BoundArgs, opts: &OutputOptions) -> Result<()> {
    let metric: MetricKind = args.metric.parse()?;
    let p: WassersteinOrder = args.p.parse()?;
    let estimator: CorrectionEstimator = args.estimator.parse()?;
    if args.sign_draws == 0 {
        return Err(Error::invalid("--sign-draws must be >= 1"));
    }

    let mut doc = ResultDocument::new("bound");
    let mut cfg = BoundConfig {
        metric,
        p,
        estimator,
        num_sign_draws: args.sign_draws,
        correction_reps: 1,
        bootstrap_m: args.bootstrap_m,
        seed: args.seed,
    };

    match (&args.generator, &args.input) {
        (Some(kind_name), None) => {
            cfg.correction_reps = args.correction_reps.unwrap_or(1);
            let kind = make_generator(kind_name, args.gen_p, args.gen_alpha)?;
            let n_grid = parse_usize_grid(&args.n_grid, "--n-grid")?;
            if args.reps == 0 {
                return Err(Error::invalid("--reps must be >= 1"));
            }

            doc.push_config("generator", ConfigValue::Text(kind.name().to_string()));
            match kind {
                GeneratorKind::Rademacher { p } => doc.push_config("gen_p", ConfigValue::Real(p)),
                GeneratorKind::ShiftedBeta { alpha } => {
                    doc.push_config("gen_alpha", ConfigValue::Real(alpha))
                }
                GeneratorKind::GaussMixture => {}
            }
            doc.push_config("d", ConfigValue::UInt(args.d as u64));
            doc.push_config("n_grid", ConfigValue::Text(grid_echo(&n_grid)));
            doc.push_config("reps", ConfigValue::UInt(args.reps as u64));
            push_bound_config(&mut doc, &cfg);

            let mut rows = Vec::with_capacity(n_grid.len());
            for (gi, &n) in n_grid.iter().enumerate() {
                let mut sub = cfg;
                sub.seed = stream_seed(cfg.seed, &[gi as u64]);
                let rep = compare_symmetrization_bounds_generator(kind, n, args.d, args.reps, &sub)?;
                rows.push(bound_row(n, &rep));
            }
            doc.table = Some(Table {
                columns: BOUND_COLUMNS.iter().map(|s| s.to_string()).collect(),
                rows,
            });
            if args.reps == 1 {
                doc.warning =
                    Some("reps = 1: mc_std_error is 0 (no replication spread)".to_string());
            }
        }
        (None, Some(input)) => {
            cfg.correction_reps = args.correction_reps.unwrap_or(8);
            let x = read_cloud(input, args.header)?;

            doc.push_config("input", ConfigValue::Text(input.display().to_string()));
            doc.push_config("header", ConfigValue::Bool(args.header));
            doc.push_config("n", ConfigValue::UInt(x.n() as u64));
            push_bound_config(&mut doc, &cfg);

            let rep = compare_symmetrization_bounds_data(&x, &cfg)?;
            doc.push_result("lhs", rep.lhs);
            doc.push_result("R_n", rep.r_n);
            doc.push_result("C_n", rep.c_n);
            doc.push_result("old_bound", rep.old_bound);
            doc.push_result("new_bound", rep.new_bound);
            doc.push_result("mc_std_error", rep.mc_std_error);
            doc.table = Some(Table {
                columns: BOUND_COLUMNS.iter().map(|s| s.to_string()).collect(),
                rows: vec![bound_row(x.n(), &rep)],
            });
        }
        _ => {
            return Err(Error::invalid(
                "exactly one of --generator and --input is required",
            ))
        }
    }
    emit(doc, opts)
}

fn push_bound_config(doc: &mut ResultDocument, cfg: &BoundConfig) {
    doc.push_config("metric", ConfigValue::Text(cfg.metric.as_str().to_string()));
    doc.push_config("p", ConfigValue::UInt(cfg.p.p() as u64));
    doc.push_config("estimator", ConfigValue::Text(cfg.estimator.to_string()));
    doc.push_config("sign_draws", ConfigValue::UInt(cfg.num_sign_draws as u64));
    doc.push_config("correction_reps", ConfigValue::UInt(cfg.correction_reps as u64));
    if let Some(m) = cfg.bootstrap_m {
        doc.push_config("bootstrap_m", ConfigValue::UInt(m as u64));
    }
    doc.push_config("seed", ConfigValue::UInt(cfg.seed));
}

fn run_power(args: &PowerArgs, opts: &OutputOptions) -> Result<()> {
    let p_grid = parse_f64_grid(&args.p_grid, "--p-grid")?;
    if args.sims == 0 {
        return Err(Error::invalid("--sims must be >= 1"));
    }
    if !(args.level > 0.0 && args.level < 1.0) {
        return Err(Error::invalid(format!(
            "--level must lie in (0, 1), got {}",
            args.level
        )));
    }
    let test_cfg = SymTestConfig {
        r: args.r,
        m_perms: args.m_perms,
        p: args.wp.parse()?,
        metric: args.metric.parse()?,
        subsample: args.subsample,
        tie_rule: args.tie_rule.parse()?,
        center: args.center,
        seed: 0, // set per simulation below
    };

    let mut rows = Vec::with_capacity(p_grid.len());
    for (gi, &prob) in p_grid.iter().enumerate() {
        let outcomes: Vec<Result<(bool, bool)>> = (0..args.sims as u64)
            .into_par_iter()
            .map(|s| {
                let data = gen_rademacher(
                    args.n,
                    args.d,
                    prob,
                    stream_seed(args.seed, &[gi as u64, s, 0]),
                )?;
                let mut cfg = test_cfg;
                cfg.seed = stream_seed(args.seed, &[gi as u64, s, 1]);
                let report = permutation_symmetry_test(&data, &cfg)?;
                let reject = report.p_value <= args.level;
                let mardia_reject = if args.with_mardia {
                    mardia_skewness_test(&data)?.p_value <= args.level
                } else {
                    false
                };
                Ok((reject, mardia_reject))
            })
            .collect();
        let mut rejections = 0usize;
        let mut mardia_rejections = 0usize;
        for o in outcomes {
            let (reject, mardia_reject) = o?;
            rejections += reject as usize;
            mardia_rejections += mardia_reject as usize;
        }
        let mut row = vec![prob, rejections as f64 / args.sims as f64];
        if args.with_mardia {
            row.push(mardia_rejections as f64 / args.sims as f64);
        }
        rows.push(row);
    }

    let mut doc = ResultDocument::new("power");
    doc.push_config("p_grid", ConfigValue::Text(grid_echo(&p_grid)));
    doc.push_config("n", ConfigValue::UInt(args.n as u64));
    doc.push_config("d", ConfigValue::UInt(args.d as u64));
    doc.push_config("sims", ConfigValue::UInt(args.sims as u64));
    doc.push_config("level", ConfigValue::Real(args.level));
    doc.push_config("r", ConfigValue::UInt(args.r as u64));
    doc.push_config("m_perms", ConfigValue::UInt(args.m_perms as u64));
    doc.push_config("wp", ConfigValue::UInt(test_cfg.p.p() as u64));
    doc.push_config("metric", ConfigValue::Text(test_cfg.metric.as_str().to_string()));
    doc.push_config("tie_rule", ConfigValue::Text(test_cfg.tie_rule.to_string()));
    if let Some(s) = args.subsample {
        doc.push_config("subsample", ConfigValue::UInt(s as u64));
    }
    doc.push_config("center", ConfigValue::Bool(args.center));
    doc.push_config("with_mardia", ConfigValue::Bool(args.with_mardia));
    doc.push_config("seed", ConfigValue::UInt(args.seed));
    let mut columns = vec!["p".to_string(), "power".to_string()];
    if args.with_mardia {
        columns.push("mardia_power".to_string());
    }
    doc.table = Some(Table { columns, rows });
    emit(doc, opts)
}

fn run_nemirovski(args: &NemirovskiArgs, opts: &OutputOptions) -> Result<()> {
    if args.w2_m == 0 {
        return Err(Error::invalid("--w2-m must be >= 1"));
    }
    let mut doc = ResultDocument::new("nemirovski");
    match &args.input {
        Some(input) => {
            let x = read_cloud(input, args.header)?;
            doc.push_config("input", ConfigValue::Text(input.display().to_string()));
            doc.push_config("header", ConfigValue::Bool(args.header));
            doc.push_config("n", ConfigValue::UInt(x.n() as u64));
            doc.push_config("w2_m", ConfigValue::UInt(args.w2_m as u64));
            doc.push_config("seed", ConfigValue::UInt(args.seed));

            let w2 = reflection_w2_bootstrap(&x, args.w2_m, args.seed)?;
            let rep = nemirovski_bounds(std::slice::from_ref(&x), w2)?;
            doc.push_result("lhs", rep.lhs);
            doc.push_result("old_bound", rep.old_bound);
            doc.push_result("new_bound", rep.new_bound);
            doc.push_result("w2", w2);
            doc.table = Some(Table {
                columns: nemirovski_columns(),
                rows: vec![vec![
                    x.d() as f64,
                    rep.lhs,
                    rep.old_bound,
                    rep.new_bound,
                    w2,
                    rep.mc_std_error,
                ]],
            });
        }
        None => {
            let d_grid = parse_usize_grid(&args.d_grid, "--d-grid")?;
            let alpha_grid = parse_f64_grid(&args.alpha_grid, "--alpha-grid")?;
            if args.reps == 0 {
                return Err(Error::invalid("--reps must be >= 1"));
            }
            doc.push_config("d_grid", ConfigValue::Text(grid_echo(&d_grid)));
            doc.push_config("n", ConfigValue::UInt(args.n as u64));
            doc.push_config("alpha_grid", ConfigValue::Text(grid_echo(&alpha_grid)));
            doc.push_config("reps", ConfigValue::UInt(args.reps as u64));
            doc.push_config("w2_m", ConfigValue::UInt(args.w2_m as u64));
            doc.push_config("seed", ConfigValue::UInt(args.seed));

            let mut columns = vec!["d".to_string(), "alpha".to_string()];
            columns.extend(nemirovski_columns().into_iter().skip(1));
            let mut rows = Vec::with_capacity(d_grid.len() * alpha_grid.len());
            for (di, &d) in d_grid.iter().enumerate() {
                for (ai, &alpha) in alpha_grid.iter().enumerate() {
                    let cell: Vec<Result<(PointCloud, f64)>> = (0..args.reps as u64)
                        .into_par_iter()
                        .map(|j| {
                            let spec = GeneratorSpec {
                                kind: GeneratorKind::ShiftedBeta { alpha },
                                n: args.n,
                                d,
                                seed: stream_seed(args.seed, &[di as u64, ai as u64, j, 0]),
                            };
                            let x = spec.generate()?;
                            let w2 = reflection_w2_bootstrap(
                                &x,
                                args.w2_m,
                                stream_seed(args.seed, &[di as u64, ai as u64, j, 1]),
                            )?;
                            Ok((x, w2))
                        })
                        .collect();
                    let mut clouds = Vec::with_capacity(args.reps);
                    let mut w2_sum = 0.0;
                    for c in cell {
                        let (x, w2) = c?;
                        clouds.push(x);
                        w2_sum += w2;
                    }
                    let w2 = w2_sum / args.reps as f64;
                    let rep = nemirovski_bounds(&clouds, w2)?;
                    rows.push(vec![
                        d as f64,
                        alpha,
                        rep.lhs,
                        rep.old_bound,
                        rep.new_bound,
                        w2,
                        rep.mc_std_error,
                    ]);
                }
            }
            doc.table = Some(Table { columns, rows });
        }
    }
    emit(doc, opts)
}

fn nemirovski_columns() -> Vec<String> {
    ["d", "lhs", "old_bound", "new_bound", "w2", "mc_std_error"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// One bootstrap draw of the reflection distance under the l-infinity
/// metric, the plug-in for the corrected l-infinity bound.
fn reflection_w2_bootstrap(x: &PointCloud, m: usize, seed: u64) -> Result<f64> {
    let cfg = crate::bootstrap::BootstrapConfig {
        m,
        r: 1,
        p: WassersteinOrder::W2,
        metric: MetricKind::Linf,
        seed,
    };
    Ok(crate::bootstrap::bootstrap_reflection_estimate(x, &cfg)?.mean)
}
