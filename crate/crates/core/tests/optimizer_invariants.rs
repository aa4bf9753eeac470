use feasrepair::benchmarks::{make_scenario, make_tp5, FunctionId, Placement};
use feasrepair::optimizers::{
    run_de_observed, run_pso_observed, run_rga_observed, Crossover, DeConfig, Optimizer, OptimizerKind, PsoConfig,
    RgaConfig, RunSettings,
};
use feasrepair::repair::{RepairKind, RepairStrategy, VelocityPolicy};
use feasrepair::{ConstrainedProblem, RngStream};

fn scenario(f: FunctionId, n: usize, placement: Placement) -> ConstrainedProblem {
    make_scenario(f, n, placement).unwrap().to_problem().unwrap()
}

fn pso_pairings() -> Vec<(RepairKind, VelocityPolicy)> {
    let mut out = Vec::new();
    for kind in RepairKind::ALL {
        out.push((kind, VelocityPolicy::Recomputed));
        out.push((kind, VelocityPolicy::Unchanged));
        if matches!(kind, RepairKind::SetOnBoundary | RepairKind::Shrink) {
            out.push((kind, VelocityPolicy::Reflected));
            out.push((kind, VelocityPolicy::SetToZero));
        }
    }
    out.push((RepairKind::SetOnBoundary, VelocityPolicy::Hyperbolic));
    out
}

#[test]
fn populations_stay_in_the_box() {
    let settings = RunSettings::new(3_000, 1e-10);
    for (f, placement) in [(FunctionId::Elp, Placement::OnBoundary), (FunctionId::Ros, Placement::CloseToBoundary)] {
        let p = scenario(f, 10, placement);
        let inside = |pop: &[Vec<f64>]| pop.iter().all(|x| p.bounds().contains(x));
        for (kind, velocity) in pso_pairings() {
            let cfg = PsoConfig { population: 20, repair: RepairStrategy::new(kind), velocity_policy: velocity, ..PsoConfig::default() };
            let mut ok = true;
            run_pso_observed(&p, &cfg, &settings, &mut RngStream::new(1), &mut |pop| ok &= inside(pop)).unwrap();
            assert!(ok, "pso {kind:?}/{velocity:?}");
        }
        for kind in RepairKind::ALL {
            for crossover in [Crossover::Exponential, Crossover::Binomial] {
                let cfg = DeConfig { repair: RepairStrategy::new(kind), crossover, ..DeConfig::default() };
                let mut ok = true;
                run_de_observed(&p, &cfg, &settings, &mut RngStream::new(2), &mut |pop| ok &= inside(pop)).unwrap();
                assert!(ok, "de {kind:?}/{crossover:?}");
            }
            for (elitist, rigid_bounds) in [(false, false), (true, false), (false, true), (true, true)] {
                let cfg = RgaConfig { population: 20, elitist, rigid_bounds, repair: RepairStrategy::new(kind), ..RgaConfig::default() };
                let mut ok = true;
                run_rga_observed(&p, &cfg, &settings, &mut RngStream::new(3), &mut |pop| ok &= inside(pop)).unwrap();
                assert!(ok, "rga {kind:?} elitist={elitist} rigid={rigid_bounds}");
            }
        }
    }
}

#[test]
fn populations_stay_feasible_under_nonlinear_constraints() {
    let p = make_tp5().unwrap();
    let settings = RunSettings::new(4_000, 1e-3);
    let feasible = |pop: &[Vec<f64>]| pop.iter().all(|x| p.is_feasible(x).unwrap());
    let ip = RepairStrategy::new(RepairKind::IpSpread);
    let mut ok = true;
    run_de_observed(&p, &DeConfig::default(), &settings, &mut RngStream::new(4), &mut |pop| ok &= feasible(pop)).unwrap();
    let pso = PsoConfig { population: 20, repair: ip, ..PsoConfig::default() };
    run_pso_observed(&p, &pso, &settings, &mut RngStream::new(5), &mut |pop| ok &= feasible(pop)).unwrap();
    let rga = RgaConfig { population: 20, ..RgaConfig::default() };
    run_rga_observed(&p, &rga, &settings, &mut RngStream::new(6), &mut |pop| ok &= feasible(pop)).unwrap();
    assert!(ok);
}

#[test]
fn de_never_accepts_a_worse_trial() {
    let p = scenario(FunctionId::Sch, 10, Placement::AtCenter);
    for crossover in [Crossover::Exponential, Crossover::Binomial] {
        let cfg = DeConfig { crossover, ..DeConfig::default() };
        let mut prev: Option<Vec<f64>> = None;
        let mut ok = true;
        run_de_observed(&p, &cfg, &RunSettings::new(20_000, 1e-10), &mut RngStream::new(7), &mut |pop| {
            let fit: Vec<f64> = pop.iter().map(|x| p.objective_value(x)).collect();
            if let Some(old) = &prev {
                ok &= fit.iter().zip(old).all(|(new, old)| new <= old);
            }
            prev = Some(fit);
        })
        .unwrap();
        assert!(ok);
    }
}

#[test]
fn elitist_rga_keeps_its_best() {
    let p = scenario(FunctionId::Elp, 10, Placement::AtCenter);
    let cfg = RgaConfig { population: 40, elitist: true, ..RgaConfig::default() };
    let mut best = f64::INFINITY;
    let mut ok = true;
    run_rga_observed(&p, &cfg, &RunSettings::new(20_000, 1e-10), &mut RngStream::new(8), &mut |pop| {
        let b = pop.iter().map(|x| p.objective_value(x)).fold(f64::INFINITY, f64::min);
        ok &= b <= best;
        best = b;
    })
    .unwrap();
    assert!(ok);
}

#[test]
fn traces_are_monotone_and_runs_reproducible() {
    let p = scenario(FunctionId::Ack, 10, Placement::CloseToBoundary);
    let settings = RunSettings::new(10_000, 1e-10).with_trace();
    for kind in OptimizerKind::ALL {
        let opt = Optimizer::with_defaults(kind, RepairStrategy::new(RepairKind::ExpConfined), VelocityPolicy::Recomputed).unwrap();
        let a = opt.run(&p, &settings, &mut RngStream::new(11)).unwrap();
        let b = opt.run(&p, &settings, &mut RngStream::new(11)).unwrap();
        assert_eq!(a, b, "{kind}");
        let trace = a.trace.unwrap();
        assert!(!trace.is_empty());
        assert!(trace.windows(2).all(|w| w[0].0 < w[1].0 && w[1].1 < w[0].1), "{kind}");
        assert_eq!(trace.last().unwrap().1, a.best_fitness);
        assert!(a.evaluations <= settings.budget);
    }
}

#[test]
fn success_is_detected_at_the_exact_evaluation() {
    let p = scenario(FunctionId::Elp, 5, Placement::AtCenter);
    let settings = RunSettings::new(200_000, 1e-10).with_trace();
    let r = Optimizer::with_defaults(OptimizerKind::De, RepairStrategy::new(RepairKind::IpSpread), VelocityPolicy::Unchanged)
        .unwrap()
        .run(&p, &settings, &mut RngStream::new(12))
        .unwrap();
    assert!(r.success);
    let trace = r.trace.unwrap();
    let (at, f) = *trace.last().unwrap();
    assert_eq!(at, r.evaluations);
    assert!(f <= 1e-10);
    assert!(trace[..trace.len() - 1].iter().all(|(_, f)| *f > 1e-10));
}
