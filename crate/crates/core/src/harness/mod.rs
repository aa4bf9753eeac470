//! Repeated-run experiments, their statistics and derived studies.

mod config;
mod studies;
mod table;

pub use config::{MatrixConfig, OptimizerOverrides, StrategyEntry};
pub use studies::{
    alpha_sweep, fe_ratio, fit_log_log_slope, scale_up_study, FeRatioEntry, FeRatioReport, ScaleUpReport,
    ScaleUpRow, ScaleUpSpec,
};
pub use table::{
    emit_alpha_sweep, emit_fe_ratio, emit_scale_up, emit_table, emit_trace, parse_table, TableFormat, CSV_HEADER,
};

use rayon::prelude::*;

use crate::benchmarks::{problem_from_id, DEFAULT_DIMENSION};
use crate::error::{usage, Result};
use crate::optimizers::{strategy_label, Optimizer, RunResult, RunSettings};
use crate::problem::ConstrainedProblem;
use crate::repair::VelocityPolicy;
use crate::rng::RngStream;

/// Success threshold and budget used for the nonlinear test problems.
pub const NONLINEAR_THRESHOLD: f64 = 1e-3;
pub const NONLINEAR_BUDGET: u64 = 200_000;

/// One cell of a results table: an optimizer with a repair strategy on a
/// problem, repeated `runs` times.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    /// Catalog id, e.g. `elp:boundary`, `sphere-ack-2` or `tp5`.
    pub problem: String,
    pub dimension: usize,
    pub optimizer: Optimizer,
    pub runs: usize,
    pub settings: RunSettings,
    /// Run `k` is seeded with `base_seed + k`.
    pub base_seed: u64,
}

impl ExperimentSpec {
    /// A spec with the default run count and the budget and threshold
    /// suited to `problem`.
    pub fn new(problem: impl Into<String>, optimizer: Optimizer) -> Self {
        let problem = problem.into();
        let settings = recommended_settings(&problem);
        Self { problem, dimension: DEFAULT_DIMENSION, optimizer, runs: 50, settings, base_seed: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return usage("runs must be at least 1");
        }
        if self.settings.budget == 0 {
            return usage("budget must be at least 1");
        }
        self.optimizer.validate()
    }

    pub fn build_problem(&self) -> Result<ConstrainedProblem> {
        problem_from_id(&self.problem, self.dimension)
    }
}

/// Budget 200,000 and threshold 1e-3 for the engineering problems,
/// budget 200,000 for the hyperspheres, and the box-scenario defaults
/// otherwise.
pub fn recommended_settings(problem_id: &str) -> RunSettings {
    let mut s = RunSettings::default();
    if matches!(problem_id, "tp5" | "tp8" | "weld") {
        s.budget = NONLINEAR_BUDGET;
        s.success_threshold = NONLINEAR_THRESHOLD;
    } else if problem_id.starts_with("sphere-") {
        s.budget = NONLINEAR_BUDGET;
    }
    s
}

/// Aggregate of an experiment. FE statistics cover successful runs only;
/// fitness statistics cover all runs.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentStatistics {
    pub strategy: String,
    pub velocity_policy: String,
    pub problem: String,
    pub placement: String,
    pub runs: usize,
    pub success_count: usize,
    pub fe_best: Option<u64>,
    pub fe_median: Option<u64>,
    pub fe_worst: Option<u64>,
    pub fe_mean: Option<f64>,
    pub fitness_best: f64,
    pub fitness_median: f64,
    pub fitness_worst: f64,
}

impl ExperimentStatistics {
    /// Order statistics of a set of runs.
    pub fn from_runs(
        labels: (&str, &str, &str, &str),
        results: &[RunResult],
    ) -> Result<Self> {
        if results.is_empty() {
            return usage("statistics need at least one run");
        }
        let mut fes: Vec<u64> = results.iter().filter(|r| r.success).map(|r| r.evaluations).collect();
        fes.sort_unstable();
        let mut fits: Vec<f64> = results.iter().map(|r| r.best_fitness).collect();
        fits.sort_by(f64::total_cmp);
        let fe_mean = (!fes.is_empty()).then(|| fes.iter().map(|&v| v as f64).sum::<f64>() / fes.len() as f64);
        Ok(Self {
            strategy: labels.0.to_string(),
            velocity_policy: labels.1.to_string(),
            problem: labels.2.to_string(),
            placement: labels.3.to_string(),
            runs: results.len(),
            success_count: fes.len(),
            fe_best: fes.first().copied(),
            fe_median: lower_median(&fes),
            fe_worst: fes.last().copied(),
            fe_mean,
            fitness_best: fits[0],
            fitness_median: lower_median(&fits).expect("non-empty"),
            fitness_worst: fits[fits.len() - 1],
        })
    }

    /// No run reached the target.
    pub fn is_dnc(&self) -> bool {
        self.success_count == 0
    }

    /// Strategy and velocity policy as one key.
    pub fn strategy_key(&self) -> String {
        if self.velocity_policy.is_empty() || self.velocity_policy == self.strategy {
            self.strategy.clone()
        } else {
            format!("{}/{}", self.strategy, self.velocity_policy)
        }
    }

    /// More than 45 of 50 runs succeeded, scaled to the run count.
    pub fn solved(&self) -> bool {
        self.success_count * 50 > 45 * self.runs
    }
}

/// Lower-middle element of sorted data.
pub fn lower_median<T: Copy>(sorted: &[T]) -> Option<T> {
    if sorted.is_empty() {
        None
    } else {
        Some(sorted[(sorted.len() - 1) / 2])
    }
}

/// Splits `elp:boundary` into `("elp", "boundary")`; ids without a
/// placement get an empty one, except bare box functions which default to
/// `center`.
pub fn split_problem_id(id: &str) -> (String, String) {
    match id.split_once(':') {
        Some((p, q)) => (p.to_string(), q.to_string()),
        None if id.parse::<crate::benchmarks::FunctionId>().is_ok() => (id.to_string(), "center".to_string()),
        None => (id.to_string(), String::new()),
    }
}

fn labels_for(spec: &ExperimentSpec) -> (String, String, String, String) {
    let repair = spec.optimizer.repair();
    let velocity = spec.optimizer.velocity_policy();
    let strategy = strategy_label(repair, velocity).to_string();
    let policy = match spec.optimizer {
        Optimizer::Pso(_) if velocity != VelocityPolicy::Hyperbolic => velocity.name().to_string(),
        Optimizer::Pso(_) => "modified".to_string(),
        _ => String::new(),
    };
    let (problem, placement) = split_problem_id(&spec.problem);
    (strategy, policy, problem, placement)
}

/// Runs every repetition of `spec` and returns the raw results in run
/// order. Runs execute in parallel; each owns its random stream.
pub fn run_experiment_results(spec: &ExperimentSpec) -> Result<Vec<RunResult>> {
    spec.validate()?;
    let problem = spec.build_problem()?;
    (0..spec.runs as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = RngStream::for_run(spec.base_seed, k);
            spec.optimizer.run(&problem, &spec.settings, &mut rng)
        })
        .collect()
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentStatistics> {
    let results = run_experiment_results(spec)?;
    statistics_for(spec, &results)
}

/// Statistics of `results`, labelled from `spec`.
pub fn statistics_for(spec: &ExperimentSpec, results: &[RunResult]) -> Result<ExperimentStatistics> {
    let (s, v, p, q) = labels_for(spec);
    ExperimentStatistics::from_runs((&s, &v, &p, &q), results)
}
