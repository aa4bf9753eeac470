use std::sync::Arc;

use feasrepair::benchmarks::{make_hypersphere, make_tp5, make_tp8, make_weld, FunctionId};
use feasrepair::constraints::{
    compute_alpha_bounds, feasible_initialize, find_constraint_roots, GeneralRepairer, RootFinderConfig,
};
use feasrepair::repair::{box_ray_segment, IpMode};
use feasrepair::{BoxBounds, ConstrainedProblem, RngStream};

fn box_only(bounds: BoxBounds) -> ConstrainedProblem {
    ConstrainedProblem::builder("box", bounds, Arc::new(|x: &[f64]| x.iter().map(|v| v * v).sum()))
        .build()
        .unwrap()
}

fn unit(from: &[f64], to: &[f64]) -> Vec<f64> {
    let d: Vec<f64> = to.iter().zip(from).map(|(a, b)| a - b).collect();
    let len = d.iter().map(|v| v * v).sum::<f64>().sqrt();
    d.into_iter().map(|v| v / len).collect()
}

#[test]
fn alpha_bounds_agree_with_box_geometry() {
    let cfg = RootFinderConfig::default();
    let mut rng = RngStream::new(17);
    let mut worst = 0.0f64;
    for trial in 0..10_000 {
        let n = 2 + trial % 9;
        let lower: Vec<f64> = (0..n).map(|_| rng.uniform_in(-20.0, 5.0)).collect();
        let upper: Vec<f64> = lower.iter().map(|l| l + rng.uniform_in(0.5, 20.0)).collect();
        let b = BoxBounds::new(lower.clone(), upper.clone()).unwrap();
        let parent: Vec<f64> = (0..n).map(|i| rng.uniform_in(lower[i], upper[i])).collect();
        let mut child: Vec<f64> = (0..n).map(|i| rng.uniform_in(2.0 * lower[i] - upper[i], 2.0 * upper[i] - lower[i])).collect();
        if b.contains(&child) {
            child[0] = upper[0] + 1.0;
        }
        let problem = box_only(b.clone());
        let ab = compute_alpha_bounds(&problem, &child, &parent, &cfg).unwrap();
        let seg = box_ray_segment(&child, &parent, &b).unwrap();
        let exit = seg.d_u.min(cfg.max_ray_extent * seg.d_p);
        worst = worst.max((ab.alpha_v - seg.d_v).abs()).max((ab.alpha_u - exit).abs());
        assert!((ab.alpha_p - seg.d_p).abs() <= 1e-12 * seg.d_p.max(1.0));
        assert!(ab.alpha_v <= ab.alpha_p && ab.alpha_p <= ab.alpha_u);
    }
    assert!(worst <= 1e-8, "max |dalpha| = {worst}");
}

#[test]
fn ball_roots_match_the_chord() {
    let cfg = RootFinderConfig::default();
    let mut rng = RngStream::new(23);
    for _ in 0..2_000 {
        let n = 2 + rng.index(8);
        let o: Vec<f64> = (0..n).map(|_| rng.uniform_in(-3.0, 3.0)).collect();
        let problem = make_hypersphere(FunctionId::Elp, n, &o).unwrap();
        let dir: Vec<f64> = (0..n).map(|_| rng.uniform_in(-1.0, 1.0)).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        let radius = rng.uniform_in(0.0, 0.9);
        let parent: Vec<f64> = (0..n).map(|i| o[i] + radius * rng.uniform_in(-1.0, 1.0) / (n as f64).sqrt()).collect();
        let child: Vec<f64> = (0..n).map(|i| o[i] + rng.uniform_in(1.2, 4.0) * dir[i] / norm).collect();
        let u = unit(&child, &parent);
        let w: Vec<f64> = child.iter().zip(&o).map(|(c, oi)| c - oi).collect();
        let b = u.iter().zip(&w).map(|(a, c)| a * c).sum::<f64>();
        let c = w.iter().map(|v| v * v).sum::<f64>() - 1.0;
        let disc = (b * b - c).sqrt();
        let (near, far) = (-b - disc, -b + disc);

        let ab = compute_alpha_bounds(&problem, &child, &parent, &cfg).unwrap();
        assert!((ab.alpha_v - near).abs() <= 1e-8, "{} vs {near}", ab.alpha_v);
        assert!((ab.alpha_u - far.min(cfg.max_ray_extent * ab.alpha_p)).abs() <= 1e-8);

        let ball = problem.inequalities()[0].function().clone();
        let roots = find_constraint_roots(&*ball, &child, &parent, (0.0, far + 1.0), &cfg).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - near).abs() <= 1e-8 && (roots[1] - far).abs() <= 1e-8);
    }
}

#[test]
fn linear_and_quadratic_roots_match_closed_form() {
    let cfg = RootFinderConfig::default();
    let child = [0.0, 0.0];
    let parent = [3.0, 4.0];
    // along the ray x = (0.6a, 0.8a)
    let linear = |x: &[f64]| x[0] + x[1] - 2.8;
    let roots = find_constraint_roots(&linear, &child, &parent, (0.0, 10.0), &cfg).unwrap();
    assert_eq!(roots.len(), 1);
    assert!((roots[0] - 2.0).abs() <= cfg.bisection_tolerance);
    let quad = |x: &[f64]| (x[0] - 1.2) * (x[0] - 3.0);
    let roots = find_constraint_roots(&quad, &child, &parent, (0.0, 10.0), &cfg).unwrap();
    assert_eq!(roots.len(), 2);
    assert!((roots[0] - 2.0).abs() <= cfg.bisection_tolerance);
    assert!((roots[1] - 5.0).abs() <= cfg.bisection_tolerance);
}

fn audit(problem: &ConstrainedProblem, trials: usize, seed: u64) {
    let cfg = RootFinderConfig::default();
    let mut rng = RngStream::new(seed);
    let seed_point = problem.seed_solution().unwrap().as_slice().to_vec();
    let parents = feasible_initialize(problem, &seed_point, 64, 1.2, &cfg, &mut rng).unwrap();
    assert!(parents.iter().all(|p| problem.is_feasible(p).unwrap()));
    let repairer = GeneralRepairer::new(problem, cfg).unwrap();
    let mut repaired = 0;
    while repaired < trials {
        let child = problem.bounds().sample_uniform(&mut rng);
        let child: Vec<f64> = child.iter().map(|v| v * 1.5).collect();
        if problem.is_feasible(&child).unwrap() {
            continue;
        }
        let parent = &parents[rng.index(parents.len())];
        if parent == &child {
            continue;
        }
        for mode in [IpMode::Spread, IpMode::Confined] {
            let out = repairer.repair(&child, parent, mode, 1.2, &mut rng).unwrap();
            assert!(problem.is_feasible(&out.point).unwrap(), "{} produced an infeasible point", problem.name());
            let ab = repairer.alpha_bounds(&child, parent);
            if let Ok(ab) = ab {
                assert!(ab.alpha_v <= ab.alpha_p && ab.alpha_p <= ab.alpha_u);
            }
        }
        repaired += 1;
    }
}

#[test]
fn general_repair_is_always_feasible() {
    audit(&make_tp5().unwrap(), 10_000, 1);
    audit(&make_tp8().unwrap(), 3_000, 2);
    audit(&make_weld().unwrap(), 3_000, 3);
    audit(&make_hypersphere(FunctionId::Ack, 20, &[0.0; 20]).unwrap(), 3_000, 4);
    audit(&make_hypersphere(FunctionId::Sch, 20, &[2.0; 20]).unwrap(), 3_000, 5);
}
