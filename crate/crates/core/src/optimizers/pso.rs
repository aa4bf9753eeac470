//! Inertia-weight particle swarm.

use super::{argmin, evaluate_all, Feasibility, Halt, RunResult, RunSettings, Tracker};
use crate::error::{usage, Result};
use crate::problem::ConstrainedProblem;
use crate::repair::{hyperbolic_clamp_velocity, RepairKind, RepairStrategy, VelocityPolicy};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsoConfig {
    pub population: usize,
    pub inertia: f64,
    pub c1: f64,
    pub c2: f64,
    /// Unused under the hyperbolic policy except as a guard against rounding.
    pub repair: RepairStrategy,
    pub velocity_policy: VelocityPolicy,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            population: 100,
            inertia: 0.7298,
            c1: 1.49618,
            c2: 1.49618,
            repair: RepairStrategy::new(RepairKind::SetOnBoundary),
            velocity_policy: VelocityPolicy::Recomputed,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return usage(format!("PSO needs at least 2 particles, got {}", self.population));
        }
        if ![self.inertia, self.c1, self.c2].iter().all(|v| v.is_finite()) {
            return usage("PSO coefficients must be finite");
        }
        if matches!(self.velocity_policy, VelocityPolicy::Reflected | VelocityPolicy::SetToZero)
            && !matches!(self.repair.kind, RepairKind::SetOnBoundary | RepairKind::Shrink)
        {
            return usage(format!(
                "velocity policy `{}` pairs only with setonboundary or shrink, not `{}`",
                self.velocity_policy,
                self.repair.name()
            ));
        }
        Ok(())
    }
}

pub fn run_pso(
    problem: &ConstrainedProblem,
    config: &PsoConfig,
    settings: &RunSettings,
    rng: &mut RngStream,
) -> Result<RunResult> {
    run_pso_observed(problem, config, settings, rng, &mut |_| {})
}

/// [`run_pso`] that hands the swarm positions to `observe` after every
/// iteration.
pub fn run_pso_observed(
    problem: &ConstrainedProblem,
    config: &PsoConfig,
    settings: &RunSettings,
    rng: &mut RngStream,
    observe: &mut dyn FnMut(&[Vec<f64>]),
) -> Result<RunResult> {
    config.validate()?;
    if config.velocity_policy == VelocityPolicy::Hyperbolic && !problem.is_box_only() {
        return usage("the hyperbolic policy handles box bounds only");
    }
    let feas = Feasibility::new(problem, config.repair, settings.root_finder)?;
    let mut tracker = Tracker::new(problem, settings)?;
    let halt = swarm(&feas, config, &mut tracker, rng, observe).unwrap_err();
    tracker.finish(halt)
}

fn swarm(
    feas: &Feasibility<'_>,
    cfg: &PsoConfig,
    tracker: &mut Tracker<'_>,
    rng: &mut RngStream,
    observe: &mut dyn FnMut(&[Vec<f64>]),
) -> Result<(), Halt> {
    let bounds = feas.problem().bounds();
    let n = bounds.dim();
    let mut x = feas.initialize(cfg.population, rng)?;
    let mut v = vec![vec![0.0; n]; cfg.population];
    let mut pbest = x.clone();
    let mut pbest_f = evaluate_all(tracker, &x)?;
    let g = argmin(&pbest_f);
    let mut gbest = pbest[g].clone();
    let mut gbest_f = pbest_f[g];
    loop {
        for i in 0..cfg.population {
            let (xi, vi) = (&mut x[i], &mut v[i]);
            for d in 0..n {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                vi[d] = cfg.inertia * vi[d] + cfg.c1 * r1 * (pbest[i][d] - xi[d]) + cfg.c2 * r2 * (gbest[d] - xi[d]);
            }
            if cfg.velocity_policy == VelocityPolicy::Hyperbolic {
                hyperbolic_damp(vi, xi, bounds.lower(), bounds.upper());
            }
            let moved: Vec<f64> = xi.iter().zip(vi.iter()).map(|(a, b)| a + b).collect();
            let next = if feas.is_feasible(&moved) {
                moved
            } else {
                let repaired = feas.repair(moved.clone(), xi, rng)?;
                *vi = cfg.velocity_policy.post_repair_velocity(vi, xi, &moved, &repaired, bounds);
                repaired
            };
            *xi = next;
            let f = tracker.evaluate(xi)?;
            if f < pbest_f[i] {
                pbest_f[i] = f;
                pbest[i].clone_from(xi);
                if f < gbest_f {
                    gbest_f = f;
                    gbest.clone_from(xi);
                }
            }
        }
        observe(&x);
    }
}

/// Damps the components whose undamped move would leave the box.
fn hyperbolic_damp(v: &mut [f64], x: &[f64], lower: &[f64], upper: &[f64]) {
    for d in 0..v.len() {
        let target = x[d] + v[d];
        if target < lower[d] || target > upper[d] {
            v[d] = hyperbolic_clamp_velocity(v[d], x[d], lower[d], upper[d]).unwrap_or(0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{make_scenario, FunctionId, Placement};

    fn elp(placement: Placement) -> ConstrainedProblem {
        make_scenario(FunctionId::Elp, 10, placement).unwrap().to_problem().unwrap()
    }

    #[test]
    fn deterministic_for_a_seed() {
        let p = elp(Placement::OnBoundary);
        let cfg = PsoConfig { population: 20, ..PsoConfig::default() };
        let s = RunSettings::new(3_000, 1e-10).with_trace();
        let a = run_pso(&p, &cfg, &s, &mut RngStream::new(11)).unwrap();
        let b = run_pso(&p, &cfg, &s, &mut RngStream::new(11)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn every_policy_keeps_the_swarm_in_the_box() {
        let p = elp(Placement::OnBoundary);
        for (kind, pol) in [
            (RepairKind::SetOnBoundary, VelocityPolicy::Reflected),
            (RepairKind::Shrink, VelocityPolicy::SetToZero),
            (RepairKind::ExpConfined, VelocityPolicy::Recomputed),
            (RepairKind::Periodic, VelocityPolicy::Unchanged),
            (RepairKind::SetOnBoundary, VelocityPolicy::Hyperbolic),
        ] {
            let cfg = PsoConfig {
                population: 10,
                repair: RepairStrategy::new(kind),
                velocity_policy: pol,
                ..PsoConfig::default()
            };
            let mut ok = true;
            run_pso_observed(&p, &cfg, &RunSettings::new(2_000, 1e-10), &mut RngStream::new(3), &mut |pop| {
                ok &= pop.iter().all(|x| p.bounds().contains(x));
            })
            .unwrap();
            assert!(ok, "{kind:?} / {pol:?}");
        }
    }

    #[test]
    fn invalid_pairing_is_rejected() {
        let cfg = PsoConfig {
            repair: RepairStrategy::new(RepairKind::IpSpread),
            velocity_policy: VelocityPolicy::Reflected,
            ..PsoConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert!(PsoConfig { population: 1, ..PsoConfig::default() }.validate().is_err());
    }

    #[test]
    fn best_so_far_trace_is_monotone() {
        let p = elp(Placement::AtCenter);
        let cfg = PsoConfig { population: 20, ..PsoConfig::default() };
        let r = run_pso(&p, &cfg, &RunSettings::new(5_000, 1e-10).with_trace(), &mut RngStream::new(8)).unwrap();
        let t = r.trace.unwrap();
        assert!(t.windows(2).all(|w| w[1].1 < w[0].1 && w[1].0 > w[0].0));
        assert_eq!(t.last().unwrap().1, r.best_fitness);
    }
}
