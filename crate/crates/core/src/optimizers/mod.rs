//! Population-based optimizers with pluggable feasibility repair.
//!
//! Every optimizer keeps its population feasible: offspring that violate the
//! constraints are repaired before evaluation. Box-only problems use the
//! configured [`RepairStrategy`]; problems with nonlinear constraints need
//! an inverse-parabolic strategy, which is run against all constraints.

mod de;
mod operators;
mod pso;
mod rga;

use std::fmt;
use std::str::FromStr;

pub use de::{run_de, run_de_observed, Crossover, DeConfig, RepairReference};
pub use operators::{polynomial_delta, polynomial_mutation, sbx_crossover, sbx_spread_factor};
pub use pso::{run_pso, run_pso_observed, PsoConfig};
pub use rga::{run_rga, run_rga_observed, RgaConfig};

use crate::constraints::{initialize_with, GeneralRepairer, RootFinderConfig};
use crate::error::{usage, Error, Result};
use crate::problem::{ConstrainedProblem, CountedEvaluator, RealVector};
use crate::repair::{IpMode, RepairKind, RepairStrategy, VelocityPolicy};
use crate::rng::RngStream;

/// Convergence traces stop growing at this many rows.
pub const TRACE_CAP: usize = 100_000;

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub success: bool,
    /// Evaluations spent when success was detected, otherwise the budget.
    pub evaluations: u64,
    pub best_fitness: f64,
    pub best_point: RealVector,
    /// `(evaluations, best_fitness)` at every improvement, when requested.
    pub trace: Option<Vec<(u64, f64)>>,
}

/// Per-run settings shared by all optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSettings {
    pub budget: u64,
    /// A run succeeds once `best - f*` drops to this value.
    pub success_threshold: f64,
    pub record_trace: bool,
    pub root_finder: RootFinderConfig,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            budget: 1_000_000,
            success_threshold: 1e-10,
            record_trace: false,
            root_finder: RootFinderConfig::default(),
        }
    }
}

impl RunSettings {
    pub fn new(budget: u64, success_threshold: f64) -> Self {
        Self { budget, success_threshold, ..Self::default() }
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }
}

/// Why an optimizer loop stopped early.
#[derive(Debug)]
pub(crate) enum Halt {
    Budget,
    Success,
    Failed(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Failed(e)
    }
}

/// Counts evaluations and keeps the best-so-far record of a run.
pub(crate) struct Tracker<'a> {
    eval: CountedEvaluator<'a>,
    target: Option<f64>,
    best_f: f64,
    best_x: Vec<f64>,
    trace: Option<Vec<(u64, f64)>>,
    succeeded: bool,
}

impl<'a> Tracker<'a> {
    pub(crate) fn new(problem: &'a ConstrainedProblem, settings: &RunSettings) -> Result<Self> {
        if !(settings.success_threshold >= 0.0) {
            return usage("success threshold must be non-negative");
        }
        Ok(Self {
            eval: CountedEvaluator::new(problem, settings.budget)?,
            target: problem.known_optimum_value().map(|f| f + settings.success_threshold),
            best_f: f64::INFINITY,
            best_x: Vec::new(),
            trace: settings.record_trace.then(Vec::new),
            succeeded: false,
        })
    }

    pub(crate) fn evaluate(&mut self, x: &[f64]) -> Result<f64, Halt> {
        if self.eval.exhausted() {
            return Err(Halt::Budget);
        }
        let f = self.eval.evaluate(x)?;
        if f < self.best_f {
            self.best_f = f;
            self.best_x.clear();
            self.best_x.extend_from_slice(x);
            if let Some(t) = self.trace.as_mut() {
                if t.len() < TRACE_CAP {
                    t.push((self.eval.evaluations_used(), f));
                }
            }
        }
        if matches!(self.target, Some(t) if self.best_f <= t) {
            self.succeeded = true;
            return Err(Halt::Success);
        }
        Ok(f)
    }

    pub(crate) fn finish(self, halt: Halt) -> Result<RunResult> {
        match halt {
            Halt::Failed(e) => Err(e),
            Halt::Budget | Halt::Success => Ok(RunResult {
                success: self.succeeded,
                evaluations: self.eval.evaluations_used(),
                best_fitness: self.best_f,
                best_point: RealVector::new(self.best_x)?,
                trace: self.trace,
            }),
        }
    }
}

/// Repair back end chosen from the problem type.
pub(crate) enum Feasibility<'a> {
    Box { problem: &'a ConstrainedProblem, strategy: RepairStrategy },
    General { repairer: GeneralRepairer<'a>, mode: IpMode, alpha: f64 },
}

impl<'a> Feasibility<'a> {
    pub(crate) fn new(problem: &'a ConstrainedProblem, strategy: RepairStrategy, cfg: RootFinderConfig) -> Result<Self> {
        if problem.is_box_only() {
            return Ok(Feasibility::Box { problem, strategy });
        }
        let Some(mode) = strategy.ip_mode() else {
            return usage(format!(
                "problem `{}` has nonlinear constraints; only ip-c and ip-s can repair it, not `{}`",
                problem.name(),
                strategy.name()
            ));
        };
        Ok(Feasibility::General { repairer: GeneralRepairer::new(problem, cfg)?, mode, alpha: strategy.alpha })
    }

    pub(crate) fn problem(&self) -> &'a ConstrainedProblem {
        match self {
            Feasibility::Box { problem, .. } => problem,
            Feasibility::General { repairer, .. } => repairer.problem(),
        }
    }

    pub(crate) fn is_feasible(&self, x: &[f64]) -> bool {
        match self {
            Feasibility::Box { problem, .. } => problem.bounds().contains(x),
            Feasibility::General { repairer, .. } => repairer.problem().feasible_lenient(x),
        }
    }

    /// Feasible children pass through untouched.
    pub(crate) fn repair(&self, child: Vec<f64>, parent: &[f64], rng: &mut RngStream) -> Result<Vec<f64>> {
        if self.is_feasible(&child) {
            return Ok(child);
        }
        match self {
            Feasibility::Box { problem, strategy } => strategy.apply(&child, parent, problem.bounds(), rng),
            Feasibility::General { repairer, mode, alpha } => {
                Ok(repairer.repair(&child, parent, *mode, *alpha, rng)?.point)
            }
        }
    }

    /// Uniform draws from the box; constrained problems are pulled into the
    /// feasible region towards their seed solution.
    pub(crate) fn initialize(&self, size: usize, rng: &mut RngStream) -> Result<Vec<Vec<f64>>> {
        match self {
            Feasibility::Box { problem, .. } => Ok((0..size).map(|_| problem.bounds().sample_uniform(rng)).collect()),
            Feasibility::General { repairer, alpha, .. } => {
                let problem = repairer.problem();
                let seed = problem.seed_solution().ok_or_else(|| {
                    Error::Usage(format!("problem `{}` needs a feasible seed solution", problem.name()))
                })?;
                initialize_with(repairer, seed, size, *alpha, rng)
            }
        }
    }
}

/// Evaluates every member of `pop`, in order.
pub(crate) fn evaluate_all(tracker: &mut Tracker<'_>, pop: &[Vec<f64>]) -> Result<Vec<f64>, Halt> {
    pop.iter().map(|x| tracker.evaluate(x)).collect()
}

pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

/// Optimizer family and variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptimizerKind {
    Pso,
    De,
    Rga,
    RgaElite,
    RgaRigid,
    RgaEliteRigid,
}

impl OptimizerKind {
    pub const ALL: [OptimizerKind; 6] = [
        OptimizerKind::Pso,
        OptimizerKind::De,
        OptimizerKind::Rga,
        OptimizerKind::RgaElite,
        OptimizerKind::RgaRigid,
        OptimizerKind::RgaEliteRigid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OptimizerKind::Pso => "pso",
            OptimizerKind::De => "de",
            OptimizerKind::Rga => "rga",
            OptimizerKind::RgaElite => "rga-elite",
            OptimizerKind::RgaRigid => "rga-rigid",
            OptimizerKind::RgaEliteRigid => "rga-elite-rigid",
        }
    }
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OptimizerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OptimizerKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown optimizer `{s}`")))
    }
}

/// A fully configured optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Optimizer {
    Pso(PsoConfig),
    De(DeConfig),
    Rga(RgaConfig),
}

impl Optimizer {
    /// Default configuration of `kind` using `repair` and, for PSO,
    /// `velocity`.
    pub fn with_defaults(kind: OptimizerKind, repair: RepairStrategy, velocity: VelocityPolicy) -> Result<Self> {
        let opt = match kind {
            OptimizerKind::Pso => Optimizer::Pso(PsoConfig { repair, velocity_policy: velocity, ..PsoConfig::default() }),
            OptimizerKind::De => Optimizer::De(DeConfig { repair, ..DeConfig::default() }),
            OptimizerKind::Rga | OptimizerKind::RgaElite | OptimizerKind::RgaRigid | OptimizerKind::RgaEliteRigid => {
                Optimizer::Rga(RgaConfig {
                    repair,
                    elitist: matches!(kind, OptimizerKind::RgaElite | OptimizerKind::RgaEliteRigid),
                    rigid_bounds: matches!(kind, OptimizerKind::RgaRigid | OptimizerKind::RgaEliteRigid),
                    ..RgaConfig::default()
                })
            }
        };
        opt.validate()?;
        Ok(opt)
    }

    pub fn kind(&self) -> OptimizerKind {
        match self {
            Optimizer::Pso(_) => OptimizerKind::Pso,
            Optimizer::De(_) => OptimizerKind::De,
            Optimizer::Rga(c) => match (c.elitist, c.rigid_bounds) {
                (false, false) => OptimizerKind::Rga,
                (true, false) => OptimizerKind::RgaElite,
                (false, true) => OptimizerKind::RgaRigid,
                (true, true) => OptimizerKind::RgaEliteRigid,
            },
        }
    }

    pub fn repair(&self) -> RepairStrategy {
        match self {
            Optimizer::Pso(c) => c.repair,
            Optimizer::De(c) => c.repair,
            Optimizer::Rga(c) => c.repair,
        }
    }

    pub fn set_repair(&mut self, repair: RepairStrategy) {
        match self {
            Optimizer::Pso(c) => c.repair = repair,
            Optimizer::De(c) => c.repair = repair,
            Optimizer::Rga(c) => c.repair = repair,
        }
    }

    /// PSO velocity policy; the other optimizers report `Unchanged`.
    pub fn velocity_policy(&self) -> VelocityPolicy {
        match self {
            Optimizer::Pso(c) => c.velocity_policy,
            _ => VelocityPolicy::Unchanged,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Optimizer::Pso(c) => c.validate(),
            Optimizer::De(c) => c.validate(),
            Optimizer::Rga(c) => c.validate(),
        }
    }

    pub fn run(&self, problem: &ConstrainedProblem, settings: &RunSettings, rng: &mut RngStream) -> Result<RunResult> {
        match self {
            Optimizer::Pso(c) => run_pso(problem, c, settings, rng),
            Optimizer::De(c) => run_de(problem, c, settings, rng),
            Optimizer::Rga(c) => run_rga(problem, c, settings, rng),
        }
    }
}

/// Parses a CLI strategy name. `hyperbolic` selects the hyperbolic velocity
/// policy, which replaces repair; any other name is a repair kind paired
/// with `velocity`.
pub fn parse_strategy(name: &str, velocity: VelocityPolicy) -> Result<(RepairStrategy, VelocityPolicy)> {
    if name == "hyperbolic" {
        return Ok((RepairStrategy::new(RepairKind::SetOnBoundary), VelocityPolicy::Hyperbolic));
    }
    let repair: RepairStrategy = name.parse()?;
    if velocity == VelocityPolicy::Hyperbolic {
        return usage("the hyperbolic policy replaces repair; pass it as the strategy");
    }
    Ok((repair, velocity))
}

/// Display name of a strategy as used in result tables.
pub fn strategy_label(repair: RepairStrategy, velocity: VelocityPolicy) -> &'static str {
    if velocity == VelocityPolicy::Hyperbolic {
        "hyperbolic"
    } else {
        repair.name()
    }
}
