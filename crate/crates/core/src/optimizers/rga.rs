//! Real-coded genetic algorithm with SBX and polynomial mutation.

use super::operators::{polynomial_mutation, sbx_crossover};
use super::{evaluate_all, Feasibility, Halt, RunResult, RunSettings, Tracker};
use crate::error::{usage, Result};
use crate::problem::ConstrainedProblem;
use crate::repair::{RepairKind, RepairStrategy};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RgaConfig {
    pub population: usize,
    pub p_c: f64,
    pub p_m: f64,
    pub eta_c: f64,
    pub eta_m: f64,
    /// Each parent pair competes with its two children.
    pub elitist: bool,
    /// Bounded operators that never leave the box.
    pub rigid_bounds: bool,
    /// Not needed on box-only problems when `rigid_bounds` is set.
    pub repair: RepairStrategy,
}

impl Default for RgaConfig {
    fn default() -> Self {
        Self {
            population: 100,
            p_c: 0.9,
            p_m: 0.05,
            eta_c: 2.0,
            eta_m: 100.0,
            elitist: false,
            rigid_bounds: false,
            repair: RepairStrategy::new(RepairKind::IpSpread),
        }
    }
}

impl RgaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return usage(format!("GA needs at least 2 members, got {}", self.population));
        }
        if self.elitist && !self.population.is_multiple_of(2) {
            return usage("the elitist GA pairs its members and needs an even population");
        }
        for (name, p) in [("p_c", self.p_c), ("p_m", self.p_m)] {
            if !(0.0..=1.0).contains(&p) {
                return usage(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        for (name, e) in [("eta_c", self.eta_c), ("eta_m", self.eta_m)] {
            if !(e > 0.0) || !e.is_finite() {
                return usage(format!("{name} must be positive, got {e}"));
            }
        }
        Ok(())
    }
}

pub fn run_rga(
    problem: &ConstrainedProblem,
    config: &RgaConfig,
    settings: &RunSettings,
    rng: &mut RngStream,
) -> Result<RunResult> {
    run_rga_observed(problem, config, settings, rng, &mut |_| {})
}

/// [`run_rga`] that hands the population to `observe` after every
/// generation.
pub fn run_rga_observed(
    problem: &ConstrainedProblem,
    config: &RgaConfig,
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

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Crossover and mutation of one pair; infeasible children are repaired
/// towards the nearer parent.
fn offspring(
    feas: &Feasibility<'_>,
    cfg: &RgaConfig,
    p1: &[f64],
    p2: &[f64],
    rng: &mut RngStream,
) -> Result<[Vec<f64>; 2]> {
    let bounds = feas.problem().bounds();
    let (c1, c2) = sbx_crossover(p1, p2, cfg.eta_c, cfg.p_c, cfg.rigid_bounds, bounds, rng)?;
    let mut out = [c1, c2];
    for c in out.iter_mut() {
        let m = polynomial_mutation(c, cfg.eta_m, cfg.p_m, cfg.rigid_bounds, bounds, rng)?;
        let parent = if sq_dist(&m, p1) <= sq_dist(&m, p2) { p1 } else { p2 };
        *c = feas.repair(m, parent, rng)?;
    }
    Ok(out)
}

fn tournament(fit: &[f64], rng: &mut RngStream) -> usize {
    let a = rng.index(fit.len());
    let b = rng.index(fit.len());
    if fit[b] < fit[a] {
        b
    } else {
        a
    }
}

fn evolve(
    feas: &Feasibility<'_>,
    cfg: &RgaConfig,
    tracker: &mut Tracker<'_>,
    rng: &mut RngStream,
    observe: &mut dyn FnMut(&[Vec<f64>]),
) -> Result<(), Halt> {
    let size = cfg.population;
    let mut pop = feas.initialize(size, rng)?;
    let mut fit = evaluate_all(tracker, &pop)?;
    let mut order: Vec<usize> = (0..size).collect();
    loop {
        if cfg.elitist {
            rng.shuffle(&mut order);
            for pair in order.chunks_exact(2) {
                let (a, b) = (pair[0], pair[1]);
                let kids = offspring(feas, cfg, &pop[a], &pop[b], rng)?;
                let mut pool = vec![(fit[a], a, None), (fit[b], b, None)];
                for (k, kid) in kids.iter().enumerate() {
                    pool.push((tracker.evaluate(kid)?, usize::MAX, Some(k)));
                }
                // stable: on ties parents come first
                pool.sort_by(|x, y| x.0.total_cmp(&y.0));
                let survivors: Vec<(f64, Vec<f64>)> = pool[..2]
                    .iter()
                    .map(|(f, idx, kid)| (*f, kid.map_or_else(|| pop[*idx].clone(), |k| kids[k].clone())))
                    .collect();
                for (slot, (f, x)) in [a, b].into_iter().zip(survivors) {
                    pop[slot] = x;
                    fit[slot] = f;
                }
            }
        } else {
            let mut next = Vec::with_capacity(size);
            let mut next_fit = Vec::with_capacity(size);
            while next.len() < size {
                let p1 = tournament(&fit, rng);
                let p2 = tournament(&fit, rng);
                for kid in offspring(feas, cfg, &pop[p1], &pop[p2], rng)? {
                    if next.len() < size {
                        next_fit.push(tracker.evaluate(&kid)?);
                        next.push(kid);
                    }
                }
            }
            pop = next;
            fit = next_fit;
        }
        observe(&pop);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{make_scenario, FunctionId, Placement};

    fn sch_boundary() -> ConstrainedProblem {
        make_scenario(FunctionId::Sch, 10, Placement::OnBoundary).unwrap().to_problem().unwrap()
    }

    #[test]
    fn all_variants_stay_feasible_and_deterministic() {
        let p = sch_boundary();
        for (elitist, rigid) in [(false, false), (true, false), (false, true), (true, true)] {
            for kind in [RepairKind::Random, RepairKind::IpConfined, RepairKind::Shrink] {
                let cfg = RgaConfig { population: 20, elitist, rigid_bounds: rigid, repair: RepairStrategy::new(kind), ..RgaConfig::default() };
                let s = RunSettings::new(3_000, 1e-10);
                let mut ok = true;
                let a = run_rga_observed(&p, &cfg, &s, &mut RngStream::new(6), &mut |pop| {
                    ok &= pop.len() == 20 && pop.iter().all(|x| p.bounds().contains(x));
                })
                .unwrap();
                let b = run_rga(&p, &cfg, &s, &mut RngStream::new(6)).unwrap();
                assert!(ok);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn elitist_population_never_worsens() {
        let p = sch_boundary();
        let cfg = RgaConfig { population: 20, elitist: true, ..RgaConfig::default() };
        let mut sums = Vec::new();
        run_rga_observed(&p, &cfg, &RunSettings::new(4_000, 1e-10), &mut RngStream::new(2), &mut |pop| {
            let mut f: Vec<f64> = pop.iter().map(|x| p.objective_value(x)).collect();
            f.sort_by(f64::total_cmp);
            sums.push(f[0]);
        })
        .unwrap();
        assert!(sums.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn odd_elitist_population_is_rejected() {
        assert!(RgaConfig { population: 7, elitist: true, ..RgaConfig::default() }.validate().is_err());
        assert!(RgaConfig { population: 7, ..RgaConfig::default() }.validate().is_ok());
        assert!(RgaConfig { p_m: 2.0, ..RgaConfig::default() }.validate().is_err());
    }
}
