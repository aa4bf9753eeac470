//! Command-line front end for the experiment harness.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for I/O errors, and 3
//! when `--expect-success` was given but some experiment had no successful
//! run.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use feasrepair::benchmarks::FunctionId;
use feasrepair::harness::{
    alpha_sweep, emit_alpha_sweep, emit_fe_ratio, emit_scale_up, emit_table, emit_trace, fe_ratio,
    recommended_settings, run_experiment, scale_up_study, ExperimentSpec, ExperimentStatistics,
    MatrixConfig, ScaleUpSpec, TableFormat,
};
use feasrepair::optimizers::{parse_strategy, Optimizer, OptimizerKind, RunSettings};
use feasrepair::{Error, RngStream, VelocityPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_DNC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bench", version, about = "Constraint-repair experiments for PSO, DE and real-coded GAs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Repeated runs of one optimizer/strategy on one problem.
    Run(RunArgs),
    /// Every strategy on every problem listed in a TOML config.
    Matrix(MatrixArgs),
    /// Median FEs against dimension with DE and IP-S.
    Scaleup(ScaleUpArgs),
    /// Repeated runs for several inverse-parabolic widths.
    AlphaSweep(AlphaSweepArgs),
    /// Single run on a nonlinear test problem with a convergence trace.
    Solve(SolveArgs),
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Problem id, e.g. `elp:boundary`, `sphere-elp-0`, `tp5`.
    #[arg(long)]
    problem: String,
    #[arg(long, default_value = "de")]
    optimizer: String,
    /// Repair strategy, or `hyperbolic` for the PSO hyperbolic policy.
    #[arg(long, default_value = "ip-s")]
    repair: String,
    /// PSO velocity policy.
    #[arg(long, default_value = "recomputed")]
    velocity: String,
    /// Inverse-parabolic width.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 20)]
    dimension: usize,
    #[arg(long, default_value_t = 50)]
    runs: usize,
    /// Defaults to 200,000 for nonlinear problems and 1,000,000 otherwise.
    #[arg(long)]
    budget: Option<u64>,
    /// Defaults to 1e-3 for tp5/tp8/weld and 1e-10 otherwise.
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    population: Option<usize>,
    /// DE scale factor.
    #[arg(long = "de-f")]
    de_f: Option<f64>,
    /// DE crossover rate.
    #[arg(long = "de-cr")]
    de_cr: Option<f64>,
    /// DE crossover: bin or exp.
    #[arg(long = "de-crossover")]
    de_crossover: Option<String>,
    /// Vector DE repairs towards: base (the population best) or target.
    #[arg(long = "de-reference")]
    de_reference: Option<String>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the table here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Exit with status 3 if any experiment had no successful run.
    #[arg(long)]
    expect_success: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[arg(long)]
    config: PathBuf,
    /// FE-ratio report destination; printed to standard error otherwise.
    #[arg(long)]
    ratio_out: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ScaleUpArgs {
    #[arg(long, value_delimiter = ',', default_value = "elp,sch,ack,ros")]
    functions: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "20,50,100")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 50_000)]
    budget_per_variable: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    expect_success: bool,
}

#[derive(Debug, Args)]
struct AlphaSweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.1,1,10,1000")]
    alphas: Vec<f64>,
    #[command(flatten)]
    exp: ExperimentArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// `tp5`, `tp8` or `weld`.
    #[arg(long)]
    problem: String,
    /// Convergence trace destination.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, default_value = "de")]
    optimizer: String,
    #[arg(long, default_value = "ip-s")]
    repair: String,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Dnc(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CliResult<T> = Result<T, Failure>;

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Scaleup(a) => cmd_scaleup(a),
        Command::AlphaSweep(a) => cmd_alpha_sweep(a),
        Command::Solve(a) => cmd_solve(a),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Dnc(msg)) => {
            eprintln!("bench: {msg}");
            EXIT_DNC
        }
        Err(Failure::Lib(e)) => {
            eprintln!("bench: {e}");
            match e {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

fn build_spec(a: &ExperimentArgs) -> CliResult<ExperimentSpec> {
    let kind: OptimizerKind = a.optimizer.parse()?;
    let velocity: VelocityPolicy = a.velocity.parse()?;
    let velocity = if kind == OptimizerKind::Pso { velocity } else { VelocityPolicy::Unchanged };
    let (mut repair, velocity) = parse_strategy(&a.repair, velocity)?;
    if let Some(alpha) = a.alpha {
        repair = repair.with_alpha(alpha)?;
    }
    let mut optimizer = Optimizer::with_defaults(kind, repair, velocity)?;
    let overrides = feasrepair::harness::OptimizerOverrides {
        population: a.population,
        f: a.de_f,
        cr: a.de_cr,
        crossover: a.de_crossover.clone(),
        reference: a.de_reference.clone(),
        ..Default::default()
    };
    overrides.apply(&mut optimizer)?;
    let mut settings = recommended_settings(&a.problem);
    if let Some(b) = a.budget {
        settings.budget = b;
    }
    if let Some(t) = a.threshold {
        settings.success_threshold = t;
    }
    let spec = ExperimentSpec {
        problem: a.problem.clone(),
        dimension: a.dimension,
        optimizer,
        runs: a.runs,
        settings,
        base_seed: a.seed,
    };
    spec.validate()?;
    Ok(spec)
}

fn check_success(expect: bool, stats: &[ExperimentStatistics]) -> CliResult<()> {
    if let Some(s) = stats.iter().find(|s| expect && s.is_dnc()) {
        return Err(Failure::Dnc(format!("{} on {}:{} did not converge in any run", s.strategy_key(), s.problem, s.placement)));
    }
    Ok(())
}

fn cmd_run(a: RunArgs) -> CliResult<()> {
    let format: TableFormat = a.output.format.parse()?;
    let spec = build_spec(&a.exp)?;
    let stats = run_experiment(&spec)?;
    emit(a.output.out.as_deref(), &emit_table(std::slice::from_ref(&stats), format)?)?;
    check_success(a.output.expect_success, &[stats])
}

fn cmd_matrix(a: MatrixArgs) -> CliResult<()> {
    let format: TableFormat = a.output.format.parse()?;
    let text = fs::read_to_string(&a.config).map_err(|e| Error::Io(format!("{}: {e}", a.config.display())))?;
    let cfg = MatrixConfig::from_toml(&text)?;
    let mut stats = Vec::new();
    for spec in cfg.experiments()? {
        stats.push(run_experiment(&spec)?);
    }
    emit(a.output.out.as_deref(), &emit_table(&stats, format)?)?;
    let report = fe_ratio(&stats)?;
    let ratio = emit_fe_ratio(&report)?;
    match &a.ratio_out {
        Some(p) => emit(Some(p), &ratio)?,
        None => eprint!("{ratio}"),
    }
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    check_success(a.output.expect_success, &stats)
}

fn cmd_scaleup(a: ScaleUpArgs) -> CliResult<()> {
    let functions = a.functions.iter().map(|f| f.parse()).collect::<Result<Vec<FunctionId>, _>>()?;
    let spec = ScaleUpSpec {
        functions,
        sizes: a.sizes,
        runs: a.runs,
        base_seed: a.seed,
        budget_per_variable: a.budget_per_variable,
        ..ScaleUpSpec::default()
    };
    let report = scale_up_study(&spec)?;
    emit(a.out.as_deref(), &emit_scale_up(&report)?)?;
    for (f, s) in &report.slopes {
        match s {
            Some(s) => eprintln!("{}: log-log slope {s:.3}", f.name()),
            None => eprintln!("{}: slope undefined", f.name()),
        }
    }
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    let stats: Vec<ExperimentStatistics> = report.rows.iter().map(|r| r.stats.clone()).collect();
    check_success(a.expect_success, &stats)
}

fn cmd_alpha_sweep(a: AlphaSweepArgs) -> CliResult<()> {
    let spec = build_spec(&a.exp)?;
    let rows = alpha_sweep(&spec, &a.alphas)?;
    emit(a.out.as_deref(), &emit_alpha_sweep(&rows)?)
}

fn cmd_solve(a: SolveArgs) -> CliResult<()> {
    if !matches!(a.problem.as_str(), "tp5" | "tp8" | "weld") {
        return Err(Error::Usage(format!("solve handles tp5, tp8 and weld, not `{}`", a.problem)).into());
    }
    let kind: OptimizerKind = a.optimizer.parse()?;
    let (repair, velocity) = parse_strategy(&a.repair, VelocityPolicy::Recomputed)?;
    let optimizer = Optimizer::with_defaults(kind, repair, velocity)?;
    let mut settings: RunSettings = recommended_settings(&a.problem).with_trace();
    if let Some(b) = a.budget {
        settings.budget = b;
    }
    let spec = ExperimentSpec { problem: a.problem.clone(), dimension: 0, optimizer, runs: 1, settings, base_seed: a.seed };
    let problem = spec.build_problem()?;
    let result = optimizer.run(&problem, &settings, &mut RngStream::for_run(a.seed, 0))?;
    if let Some(path) = &a.trace {
        emit(Some(path), &emit_trace(&result)?)?;
    }
    let x = result.best_point.as_slice();
    println!("problem: {}", problem.name());
    println!("best objective: {:.6}", result.best_fitness);
    println!("evaluations: {}", result.evaluations);
    println!("success: {}", result.success);
    println!("x: [{}]", x.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(", "));
    for (name, g) in problem.inequality_values(x) {
        println!("{name}: {g:.6e}");
    }
    Ok(())
}
