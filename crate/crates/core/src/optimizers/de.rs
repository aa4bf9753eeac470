//! Differential evolution, DE/best/1 with exponential (default) or binomial crossover.

use super::{argmin, evaluate_all, Feasibility, Halt, RunResult, RunSettings, Tracker};
use crate::error::{usage, Result};
use crate::problem::ConstrainedProblem;
use crate::repair::{RepairKind, RepairStrategy};
use crate::rng::RngStream;

/// How the mutant and the target are recombined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossover {
    /// Each coordinate independently, one forced from the mutant.
    Binomial,
    /// A cyclic run of coordinates from a random start, continued with
    /// probability `cr`.
    Exponential,
}

impl std::str::FromStr for Crossover {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bin" | "binomial" => Ok(Self::Binomial),
            "exp" | "exponential" => Ok(Self::Exponential),
            _ => usage(format!("unknown crossover `{s}` (expected bin or exp)")),
        }
    }
}

/// Which vector an infeasible trial is repaired towards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepairReference {
    /// The base vector of the mutation, the population best.
    Base,
    /// The target vector the trial competes against.
    Target,
}

impl std::str::FromStr for RepairReference {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "base" | "best" => Ok(Self::Base),
            "target" => Ok(Self::Target),
            _ => usage(format!("unknown repair reference `{s}` (expected base or target)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeConfig {
    pub population: usize,
    pub f: f64,
    pub cr: f64,
    pub crossover: Crossover,
    pub repair: RepairStrategy,
    pub reference: RepairReference,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self {
            population: 50,
            f: 0.7,
            cr: 0.5,
            crossover: Crossover::Exponential,
            repair: RepairStrategy::new(RepairKind::IpSpread),
            reference: RepairReference::Base,
        }
    }
}

impl DeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 {
            return usage(format!("DE needs at least 4 members, got {}", self.population));
        }
        if !self.f.is_finite() {
            return usage("DE scale factor must be finite");
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return usage(format!("crossover rate must lie in [0, 1], got {}", self.cr));
        }
        Ok(())
    }
}

pub fn run_de(
    problem: &ConstrainedProblem,
    config: &DeConfig,
    settings: &RunSettings,
    rng: &mut RngStream,
) -> Result<RunResult> {
    run_de_observed(problem, config, settings, rng, &mut |_| {})
}

/// [`run_de`] that hands the population to `observe` after every generation.
pub fn run_de_observed(
    problem: &ConstrainedProblem,
    config: &DeConfig,
    settings: &RunSettings,
    rng: &mut RngStream,
    observe: &mut dyn FnMut(&[Vec<f64>]),
) -> Result<RunResult> {
    config.validate()?;
    let feas = Feasibility::new(problem, config.repair, settings.root_finder)?;
    let mut tracker = Tracker::new(problem, settings)?;
    let halt = evolve(&feas, config, &mut tracker, rng, observe).unwrap_err();
    tracker.finish(halt)
}

/// Mutant around `best`, crossed with `target`.
pub(crate) fn trial_vector(
    best: &[f64],
    r1: &[f64],
    r2: &[f64],
    target: &[f64],
    cfg: &DeConfig,
    rng: &mut RngStream,
) -> Vec<f64> {
    let n = target.len();
    let mutant = |j: usize| best[j] + cfg.f * (r1[j] - r2[j]);
    match cfg.crossover {
        Crossover::Binomial => {
            let forced = rng.index(n);
            (0..n).map(|j| if j == forced || rng.uniform() < cfg.cr { mutant(j) } else { target[j] }).collect()
        }
        Crossover::Exponential => {
            let mut trial = target.to_vec();
            let mut j = rng.index(n);
            for _ in 0..n {
                trial[j] = mutant(j);
                j = (j + 1) % n;
                if rng.uniform() >= cfg.cr {
                    break;
                }
            }
            trial
        }
    }
}

fn evolve(
    feas: &Feasibility<'_>,
    cfg: &DeConfig,
    tracker: &mut Tracker<'_>,
    rng: &mut RngStream,
    observe: &mut dyn FnMut(&[Vec<f64>]),
) -> Result<(), Halt> {
    let np = cfg.population;
    let mut pop = feas.initialize(np, rng)?;
    let mut fit = evaluate_all(tracker, &pop)?;
    loop {
        let best = pop[argmin(&fit)].clone();
        for i in 0..np {
            let r1 = loop {
                let r = rng.index(np);
                if r != i {
                    break r;
                }
            };
            let r2 = loop {
                let r = rng.index(np);
                if r != i && r != r1 {
                    break r;
                }
            };
            let trial = trial_vector(&best, &pop[r1], &pop[r2], &pop[i], cfg, rng);
            let reference = match cfg.reference {
                RepairReference::Base => &best,
                RepairReference::Target => &pop[i],
            };
            let trial = feas.repair(trial, reference, rng)?;
            let f = tracker.evaluate(&trial)?;
            if f <= fit[i] {
                pop[i] = trial;
                fit[i] = f;
            }
        }
        observe(&pop);
    }
}
