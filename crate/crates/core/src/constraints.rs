//! Inverse-parabolic repair against general nonlinear constraints.
//!
//! The repair ray `x(α) = child + α (parent - child) / |parent - child|` is
//! scanned for constraint roots; the nearest roots on either side of the
//! parent (`α^p = |parent - child|`) bound the feasible stretch that the
//! inverse-parabolic draw samples from. Variable bounds enter as one
//! quadratic constraint per coordinate and equalities as `ε² - h² >= 0`.

use std::sync::Arc;

use crate::error::{check_dim, usage, Error, Result};
use crate::problem::{BoxBounds, ConstrainedProblem, RealVector, ScalarFn};
use crate::repair::{ip_distance_guarded, unit_direction, IpMode};
use crate::rng::RngStream;

/// Equality relaxation width used when a caller has no better value.
pub const DEFAULT_EQUALITY_TOLERANCE: f64 = 1e-4;

/// Grid-and-bisection root finder settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFinderConfig {
    /// Number of grid intervals scanned for sign changes.
    pub scan_steps: usize,
    /// Bisection stops once the bracket is narrower than this (in α).
    pub bisection_tolerance: f64,
    /// The exit search extends to this multiple of `α^p`.
    pub max_ray_extent: f64,
    /// Fresh draws tried before falling back to the parent.
    pub max_retries: usize,
}

impl Default for RootFinderConfig {
    fn default() -> Self {
        Self { scan_steps: 256, bisection_tolerance: 1e-10, max_ray_extent: 10.0, max_retries: 8 }
    }
}

impl RootFinderConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scan_steps < 16 {
            return usage(format!("scan_steps must be >= 16, got {}", self.scan_steps));
        }
        if !(self.bisection_tolerance > 0.0) {
            return usage("bisection_tolerance must be positive");
        }
        if !(self.max_ray_extent >= 1.0) {
            return usage("max_ray_extent must be >= 1");
        }
        Ok(())
    }
}

/// Entry, parent and exit positions along the repair ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBounds {
    pub alpha_v: f64,
    pub alpha_p: f64,
    pub alpha_u: f64,
}

/// `child + alpha * unit(parent - child)`.
pub fn point_on_ray(child: &[f64], parent: &[f64], alpha: f64) -> Result<Vec<f64>> {
    check_dim("parent", child.len(), parent.len())?;
    let (u, _) = unit_direction(child, parent).ok_or_else(|| Error::Usage("zero-length repair ray".into()))?;
    Ok(along(child, &u, alpha))
}

#[inline]
fn along(child: &[f64], unit: &[f64], alpha: f64) -> Vec<f64> {
    child.iter().zip(unit).map(|(c, u)| c + alpha * u).collect()
}

#[inline]
fn along_into(out: &mut [f64], child: &[f64], unit: &[f64], alpha: f64) {
    for ((o, c), u) in out.iter_mut().zip(child).zip(unit) {
        *o = c + alpha * u;
    }
}

#[inline]
fn satisfied(v: f64) -> bool {
    v >= 0.0
}

/// Bisects `[a, b]` where the predicate differs at the ends; returns the end
/// of the final bracket on which the predicate holds.
fn bisect(mut a: f64, mut b: f64, tol: f64, mut holds: impl FnMut(f64) -> bool) -> f64 {
    let a_holds = holds(a);
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        if holds(m) == a_holds {
            a = m;
        } else {
            b = m;
        }
    }
    if a_holds {
        a
    } else {
        b
    }
}

/// All roots of `constraint(x(α))` on `range`, located by sign changes on a
/// uniform grid and refined by bisection. Touching zeros without a sign
/// change are not reported.
pub fn find_constraint_roots(
    constraint: &dyn Fn(&[f64]) -> f64,
    child: &[f64],
    parent: &[f64],
    range: (f64, f64),
    cfg: &RootFinderConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    check_dim("parent", child.len(), parent.len())?;
    let (lo, hi) = range;
    if !(lo <= hi) {
        return usage(format!("empty root range [{lo}, {hi}]"));
    }
    let (u, _) = unit_direction(child, parent).ok_or_else(|| Error::Usage("zero-length repair ray".into()))?;
    let mut buf = vec![0.0; child.len()];
    let mut holds = |a: f64| {
        along_into(&mut buf, child, &u, a);
        satisfied(constraint(&buf))
    };
    let h = (hi - lo) / cfg.scan_steps as f64;
    let mut roots = Vec::new();
    let mut prev_a = lo;
    let mut prev = holds(lo);
    for k in 1..=cfg.scan_steps {
        let a = if k == cfg.scan_steps { hi } else { lo + h * k as f64 };
        let cur = holds(a);
        if cur != prev {
            let ends_hold = [prev, cur];
            let root = bisect(prev_a, a, cfg.bisection_tolerance, &mut holds);
            // report the bracket midpoint rather than the feasible end
            let other = if ends_hold[0] { root + cfg.bisection_tolerance } else { root - cfg.bisection_tolerance };
            let mid = 0.5 * (root + other.clamp(prev_a, a));
            roots.push(mid);
        }
        prev = cur;
        prev_a = a;
    }
    Ok(roots)
}

/// `(x_i - lower_i)(upper_i - x_i)`, non-negative exactly on the interval.
pub fn bounds_as_quadratic(bounds: &BoxBounds, i: usize) -> Result<ScalarFn> {
    if i >= bounds.dim() {
        return usage(format!("coordinate {i} out of range for dimension {}", bounds.dim()));
    }
    let (lo, hi) = (bounds.lower()[i], bounds.upper()[i]);
    Ok(Arc::new(move |x: &[f64]| (x[i] - lo) * (hi - x[i])))
}

/// `ε² - h(x)²`, non-negative exactly when `|h(x)| <= ε`.
pub fn relax_equality(h: ScalarFn, epsilon: f64) -> Result<ScalarFn> {
    if !(epsilon > 0.0) {
        return usage(format!("equality relaxation needs epsilon > 0, got {epsilon}"));
    }
    let e2 = epsilon * epsilon;
    Ok(Arc::new(move |x: &[f64]| {
        let v = h(x);
        e2 - v * v
    }))
}

/// Every constraint of a problem in `>= 0` form: inequalities, enforced
/// variable bounds as quadratics, and relaxed equalities.
#[derive(Clone)]
pub struct ConstraintSet {
    funcs: Vec<ScalarFn>,
}

impl ConstraintSet {
    pub fn for_problem(problem: &ConstrainedProblem) -> Result<Self> {
        let mut funcs: Vec<ScalarFn> = problem.inequalities().iter().map(|g| g.function().clone()).collect();
        if problem.box_enforced() {
            for i in 0..problem.dimension() {
                funcs.push(bounds_as_quadratic(problem.bounds(), i)?);
            }
        }
        for h in problem.equalities() {
            let eps = if h.tolerance > 0.0 { h.tolerance } else { DEFAULT_EQUALITY_TOLERANCE };
            funcs.push(relax_equality(h.function().clone(), eps)?);
        }
        Ok(Self { funcs })
    }

    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.funcs.is_empty()
    }

    pub fn functions(&self) -> &[ScalarFn] {
        &self.funcs
    }

    /// True when every constraint is satisfied; NaN counts as violated.
    #[inline]
    pub fn all_satisfied(&self, x: &[f64]) -> bool {
        self.funcs.iter().all(|g| satisfied(g(x)))
    }
}

/// Outcome of a general repair.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralRepair {
    pub point: Vec<f64>,
    /// The sampled points failed the feasibility audit and the parent was
    /// returned instead.
    pub fell_back_to_parent: bool,
}

/// Inverse-parabolic repair bound to one problem.
#[derive(Clone)]
pub struct GeneralRepairer<'a> {
    problem: &'a ConstrainedProblem,
    constraints: ConstraintSet,
    cfg: RootFinderConfig,
}

impl<'a> GeneralRepairer<'a> {
    pub fn new(problem: &'a ConstrainedProblem, cfg: RootFinderConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self { problem, constraints: ConstraintSet::for_problem(problem)?, cfg })
    }

    pub fn problem(&self) -> &'a ConstrainedProblem {
        self.problem
    }

    pub fn config(&self) -> &RootFinderConfig {
        &self.cfg
    }

    /// Feasibility as seen by the repair (all constraints in `>= 0` form).
    #[inline]
    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.constraints.all_satisfied(x)
    }

    /// Nearest constraint roots below and above the parent along the ray.
    ///
    /// Scans `[0, α^p]` backwards from the parent and `[α^p, extent·α^p]`
    /// forwards, `scan_steps` intervals each, stopping at the first grid
    /// node that violates any constraint and bisecting that interval.
    pub fn alpha_bounds(&self, child: &[f64], parent: &[f64]) -> Result<AlphaBounds> {
        let n = self.problem.dimension();
        check_dim("child", n, child.len())?;
        check_dim("parent", n, parent.len())?;
        if !self.is_feasible(parent) {
            return usage("repair parent is infeasible");
        }
        let (u, alpha_p) = unit_direction(child, parent)
            .ok_or_else(|| Error::Usage("repair parent coincides with the child".into()))?;
        let steps = self.cfg.scan_steps;
        let tol = self.cfg.bisection_tolerance;
        let mut buf = vec![0.0; n];
        let mut holds = |a: f64| {
            along_into(&mut buf, child, &u, a);
            self.constraints.all_satisfied(&buf)
        };

        let h = alpha_p / steps as f64;
        let mut alpha_v = 0.0;
        let mut upper = alpha_p;
        for k in (0..steps).rev() {
            let a = h * k as f64;
            if !holds(a) {
                alpha_v = bisect(a, upper, tol, &mut holds);
                break;
            }
            upper = a;
        }

        let alpha_max = self.cfg.max_ray_extent * alpha_p;
        let h = (alpha_max - alpha_p) / steps as f64;
        let mut alpha_u = alpha_max;
        let mut lower = alpha_p;
        for k in 1..=steps {
            let a = if k == steps { alpha_max } else { alpha_p + h * k as f64 };
            if !holds(a) {
                alpha_u = bisect(lower, a, tol, &mut holds);
                break;
            }
            lower = a;
        }

        let alpha_v = alpha_v.min(alpha_p);
        let alpha_u = alpha_u.max(alpha_p);
        if !holds(0.5 * (alpha_v + alpha_p)) {
            return Err(Error::RepairFailed(format!(
                "no feasible stretch between alpha_v = {alpha_v} and alpha_p = {alpha_p}"
            )));
        }
        Ok(AlphaBounds { alpha_v, alpha_p, alpha_u })
    }

    /// Repairs `child` with a fresh draw per attempt.
    pub fn repair(&self, child: &[f64], parent: &[f64], mode: IpMode, alpha: f64, rng: &mut RngStream) -> Result<GeneralRepair> {
        self.repair_with_draws(child, parent, mode, alpha, || rng.uniform())
    }

    /// Repairs `child` using `r` for every attempt.
    pub fn repair_with(&self, child: &[f64], parent: &[f64], mode: IpMode, alpha: f64, r: f64) -> Result<GeneralRepair> {
        self.repair_with_draws(child, parent, mode, alpha, || r)
    }

    fn repair_with_draws(
        &self,
        child: &[f64],
        parent: &[f64],
        mode: IpMode,
        alpha: f64,
        mut draw: impl FnMut() -> f64,
    ) -> Result<GeneralRepair> {
        if !(alpha > 0.0) {
            return usage(format!("alpha must be positive, got {alpha}"));
        }
        check_dim("child", self.problem.dimension(), child.len())?;
        if self.problem.feasible_lenient(child) {
            return Ok(GeneralRepair { point: child.to_vec(), fell_back_to_parent: false });
        }
        let fallback = GeneralRepair { point: parent.to_vec(), fell_back_to_parent: true };
        let ab = match self.alpha_bounds(child, parent) {
            Ok(ab) => ab,
            Err(Error::RepairFailed(_)) => return Ok(fallback),
            Err(e) => return Err(e),
        };
        let (u, _) = unit_direction(child, parent).expect("alpha_bounds checked the ray");
        let a = match mode {
            IpMode::Confined => ab.alpha_p,
            IpMode::Spread => ab.alpha_u,
        };
        for _ in 0..self.cfg.max_retries.max(1) {
            let d = ip_distance_guarded(ab.alpha_v, a, alpha, draw());
            let y = along(child, &u, d);
            if self.problem.feasible_lenient(&y) {
                return Ok(GeneralRepair { point: y, fell_back_to_parent: false });
            }
        }
        Ok(fallback)
    }
}

/// Nearest feasible-entry and feasible-exit positions on the ray.
pub fn compute_alpha_bounds(
    problem: &ConstrainedProblem,
    child: &[f64],
    parent: &[f64],
    cfg: &RootFinderConfig,
) -> Result<AlphaBounds> {
    GeneralRepairer::new(problem, *cfg)?.alpha_bounds(child, parent)
}

/// One-shot general inverse-parabolic repair.
pub fn repair_general_ip(
    child: &[f64],
    parent: &[f64],
    problem: &ConstrainedProblem,
    mode: IpMode,
    alpha: f64,
    cfg: &RootFinderConfig,
    rng: &mut RngStream,
) -> Result<GeneralRepair> {
    GeneralRepairer::new(problem, *cfg)?.repair(child, parent, mode, alpha, rng)
}

/// Population of `pop_size` feasible points: uniform draws from the
/// problem's box, with infeasible ones pulled towards `seed` by the spread
/// inverse-parabolic repair.
pub fn feasible_initialize(
    problem: &ConstrainedProblem,
    seed: &[f64],
    pop_size: usize,
    alpha: f64,
    cfg: &RootFinderConfig,
    rng: &mut RngStream,
) -> Result<Vec<Vec<f64>>> {
    let repairer = GeneralRepairer::new(problem, *cfg)?;
    initialize_with(&repairer, seed, pop_size, alpha, rng)
}

pub(crate) fn initialize_with(
    repairer: &GeneralRepairer<'_>,
    seed: &[f64],
    pop_size: usize,
    alpha: f64,
    rng: &mut RngStream,
) -> Result<Vec<Vec<f64>>> {
    let problem = repairer.problem();
    check_dim("seed", problem.dimension(), seed.len())?;
    if !problem.is_feasible(seed)? {
        return usage("seed solution is infeasible");
    }
    let mut pop = Vec::with_capacity(pop_size);
    for _ in 0..pop_size {
        let x = problem.bounds().sample_uniform(rng);
        if problem.feasible_lenient(&x) {
            pop.push(x);
        } else {
            pop.push(repairer.repair(&x, seed, IpMode::Spread, alpha, rng)?.point);
        }
    }
    Ok(pop)
}

/// Rejection-samples the problem's box for a feasible point.
pub fn find_feasible_seed(problem: &ConstrainedProblem, max_trials: usize, rng: &mut RngStream) -> Result<RealVector> {
    for _ in 0..max_trials {
        let x = problem.bounds().sample_uniform(rng);
        if problem.feasible_lenient(&x) {
            return RealVector::new(x);
        }
    }
    Err(Error::RepairFailed(format!("no feasible point in {max_trials} uniform draws")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{make_hypersphere, FunctionId};
    use crate::problem::Sense;
    use approx::assert_abs_diff_eq;

    fn sphere20() -> ConstrainedProblem {
        make_hypersphere(FunctionId::Elp, 20, &[0.0; 20]).unwrap()
    }

    fn axis_point(n: usize, v: f64) -> Vec<f64> {
        let mut x = vec![0.0; n];
        x[0] = v;
        x
    }

    #[test]
    fn point_on_ray_examples() {
        assert_eq!(point_on_ray(&[0.0, 0.0], &[3.0, 4.0], 0.0).unwrap(), vec![0.0, 0.0]);
        let p = point_on_ray(&[0.0, 0.0], &[3.0, 4.0], 5.0).unwrap();
        assert_abs_diff_eq!(p[0], 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 4.0, epsilon = 1e-12);
        let p = point_on_ray(&[0.0, 0.0], &[3.0, 4.0], 2.5).unwrap();
        assert_abs_diff_eq!(p[0], 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(p[1], 2.0, epsilon = 1e-12);
        assert!(point_on_ray(&[1.0, 1.0], &[1.0, 1.0], 1.0).is_err());
    }

    #[test]
    fn roots_of_simple_quadratic() {
        let cfg = RootFinderConfig::default();
        let g = |x: &[f64]| 1.0 - x[0] * x[0];
        let roots = find_constraint_roots(&g, &[0.0], &[2.0], (0.0, 20.0), &cfg).unwrap();
        assert_eq!(roots.len(), 1);
        assert_abs_diff_eq!(roots[0], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn roots_of_sphere_chord() {
        let cfg = RootFinderConfig::default();
        let g = |x: &[f64]| 1.0 - x.iter().map(|v| v * v).sum::<f64>();
        let roots = find_constraint_roots(&g, &axis_point(20, 3.0), &[0.0; 20], (0.0, 30.0), &cfg).unwrap();
        assert_eq!(roots.len(), 2);
        assert_abs_diff_eq!(roots[0], 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(roots[1], 4.0, epsilon = 1e-10);
    }

    #[test]
    fn no_sign_change_no_roots() {
        let cfg = RootFinderConfig::default();
        let g = |x: &[f64]| 5.0 + x[0] * x[0];
        assert!(find_constraint_roots(&g, &[0.0], &[1.0], (0.0, 10.0), &cfg).unwrap().is_empty());
    }

    #[test]
    fn config_validation() {
        let mut c = RootFinderConfig::default();
        c.scan_steps = 8;
        assert!(c.validate().is_err());
        let mut c = RootFinderConfig::default();
        c.bisection_tolerance = 0.0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn quadratic_bounds() {
        let b = BoxBounds::uniform(2, 0.0, 10.0).unwrap();
        let g = bounds_as_quadratic(&b, 1).unwrap();
        assert_eq!(g(&[0.0, 5.0]), 25.0);
        assert_eq!(g(&[0.0, 0.0]), 0.0);
        assert_eq!(g(&[0.0, 10.0]), 0.0);
        assert_eq!(g(&[0.0, -2.0]), -24.0);
        assert!(bounds_as_quadratic(&b, 2).is_err());
    }

    #[test]
    fn relaxed_equality() {
        let eps = 0.1;
        let g = relax_equality(Arc::new(|x: &[f64]| x[0]), eps).unwrap();
        assert_eq!(g(&[0.0]), eps * eps);
        assert_abs_diff_eq!(g(&[eps]), 0.0, epsilon = 1e-18);
        assert_abs_diff_eq!(g(&[2.0 * eps]), -3.0 * eps * eps, epsilon = 1e-15);
        assert!(relax_equality(Arc::new(|x: &[f64]| x[0]), 0.0).is_err());
    }

    #[test]
    fn sphere_alpha_bounds() {
        let p = sphere20();
        let ab = compute_alpha_bounds(&p, &axis_point(20, 3.0), &[0.0; 20], &RootFinderConfig::default()).unwrap();
        assert_abs_diff_eq!(ab.alpha_v, 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(ab.alpha_p, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ab.alpha_u, 4.0, epsilon = 1e-9);
    }

    #[test]
    fn boundary_parent_gives_equal_entry() {
        let p = sphere20();
        let ab = compute_alpha_bounds(&p, &axis_point(20, 3.0), &axis_point(20, 1.0), &RootFinderConfig::default()).unwrap();
        assert_abs_diff_eq!(ab.alpha_v, ab.alpha_p, epsilon = 1e-9);
        assert!(ab.alpha_u >= ab.alpha_p);
    }

    #[test]
    fn infeasible_parent_is_rejected() {
        let p = sphere20();
        let r = compute_alpha_bounds(&p, &axis_point(20, 3.0), &axis_point(20, 2.0), &RootFinderConfig::default());
        assert!(matches!(r, Err(Error::Usage(_))));
    }

    #[test]
    fn general_ip_endpoints() {
        let p = sphere20();
        let rep = GeneralRepairer::new(&p, RootFinderConfig::default()).unwrap();
        let child = axis_point(20, 3.0);
        let y = rep.repair_with(&child, &[0.0; 20], IpMode::Confined, 1.2, 0.0).unwrap();
        assert!(!y.fell_back_to_parent);
        assert_abs_diff_eq!(y.point.iter().map(|v| v * v).sum::<f64>().sqrt(), 1.0, epsilon = 1e-9);
        let y = rep.repair_with(&child, &[0.0; 20], IpMode::Confined, 1.2, 1.0).unwrap();
        for v in &y.point {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-12);
        }
        let y = rep.repair_with(&child, &[0.0; 20], IpMode::Spread, 1.2, 1.0).unwrap();
        assert!(p.is_feasible(&y.point).unwrap());
        assert_abs_diff_eq!(y.point[0], -1.0, epsilon = 1e-9);
    }

    #[test]
    fn needle_region_keeps_repair_at_the_parent() {
        let b = BoxBounds::uniform(1, -10.0, 10.0).unwrap();
        let p = ConstrainedProblem::builder("needle", b, Arc::new(|x: &[f64]| x[0]))
            .inequality("g", Sense::NonNegative, Arc::new(|x: &[f64]| {
                if (x[0] - 1.0).abs() < 1e-13 { 1.0 } else { -1.0 }
            }))
            .build()
            .unwrap();
        let rep = GeneralRepairer::new(&p, RootFinderConfig::default()).unwrap();
        for r in [0.0, 0.5, 1.0] {
            let out = rep.repair_with(&[5.0], &[1.0], IpMode::Spread, 1.2, r).unwrap();
            assert!(p.is_feasible(&out.point).unwrap());
            assert!((out.point[0] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hole_between_grid_nodes_falls_back_to_parent() {
        // the hole (0.43, 0.56) lies between two scan nodes and goes unseen
        let b = BoxBounds::uniform(1, -10.0, 10.0).unwrap();
        let p = ConstrainedProblem::builder("hole", b, Arc::new(|x: &[f64]| x[0]))
            .inequality("g", Sense::NonNegative, Arc::new(|x: &[f64]| {
                if x[0] >= -1.0 && !(x[0] > 0.43 && x[0] < 0.56) { 1.0 } else { -1.0 }
            }))
            .build()
            .unwrap();
        let rep = GeneralRepairer::new(&p, RootFinderConfig::default()).unwrap();
        let (child, parent) = ([-4.0], [0.0]);
        let ab = rep.alpha_bounds(&child, &parent).unwrap();
        assert!((ab.alpha_v - 3.0).abs() < 1e-9);
        assert!((ab.alpha_u - 14.0).abs() < 1e-9);
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..100 {
            let m = 0.5 * (lo + hi);
            if crate::repair::ip_sample_distance(ab.alpha_v, ab.alpha_u, 1.2, m).unwrap() < 4.5 {
                lo = m;
            } else {
                hi = m;
            }
        }
        let out = rep.repair_with(&child, &parent, IpMode::Spread, 1.2, lo).unwrap();
        assert!(out.fell_back_to_parent);
        assert_eq!(out.point, vec![0.0]);
    }

    #[test]
    fn initialization_is_feasible() {
        let p = sphere20();
        let mut rng = RngStream::new(5);
        let pop = feasible_initialize(&p, &[0.0; 20], 30, 1.2, &RootFinderConfig::default(), &mut rng).unwrap();
        assert_eq!(pop.len(), 30);
        for x in &pop {
            assert!(x.iter().map(|v| v * v).sum::<f64>() <= 1.0);
        }
        let one = feasible_initialize(&p, &[0.0; 20], 1, 1.2, &RootFinderConfig::default(), &mut rng).unwrap();
        assert_eq!(one.len(), 1);
        assert!(p.is_feasible(&one[0]).unwrap());
        assert!(feasible_initialize(&p, &axis_point(20, 2.0), 3, 1.2, &RootFinderConfig::default(), &mut rng).is_err());
    }

    #[test]
    fn box_only_initialization_needs_no_repair() {
        let b = BoxBounds::uniform(3, -1.0, 1.0).unwrap();
        let p = ConstrainedProblem::builder("box", b, Arc::new(|x: &[f64]| x[0])).build().unwrap();
        let mut a = RngStream::new(9);
        let mut b2 = RngStream::new(9);
        let pop = feasible_initialize(&p, &[0.0; 3], 10, 1.2, &RootFinderConfig::default(), &mut a).unwrap();
        for x in pop {
            assert_eq!(x, p.bounds().sample_uniform(&mut b2));
        }
    }

    #[test]
    fn rejection_seed() {
        let p = crate::benchmarks::make_tp5().unwrap();
        let mut rng = RngStream::new(1);
        let s = find_feasible_seed(&p, 100_000, &mut rng).unwrap();
        assert!(p.is_feasible(&s).unwrap());
    }
}
