//! Points, box bounds, constrained problems and counted objective evaluation.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{check_dim, usage, Error, Result};
use crate::rng::RngStream;

/// Real-valued function of a decision vector.
pub type ScalarFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A finite point in decision space.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return usage("vector must have dimension >= 1");
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "vector entry", value: *v });
        }
        Ok(Self(values))
    }

    pub fn filled(n: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for RealVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

/// Closed box `lower_i <= x_i <= upper_i` with `lower_i < upper_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_dim("upper bounds", lower.len(), upper.len())?;
        if lower.is_empty() {
            return usage("bounds must have dimension >= 1");
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite()) || l >= u {
                return usage(format!("bounds for coordinate {i} are not a proper interval: [{l}, {u}]"));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lo, hi]` on every one of `n` coordinates.
    pub fn uniform(n: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; n], vec![hi; n])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Period `upper_i - lower_i` of coordinate `i`.
    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }

    /// Closed-box membership.
    pub fn in_box(&self, x: &[f64]) -> Result<bool> {
        check_dim("point", self.dim(), x.len())?;
        Ok(self.contains(x))
    }

    /// `in_box` without the dimension check.
    #[inline]
    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(v, (l, u))| *l <= *v && *v <= *u)
    }

    #[inline]
    pub(crate) fn coordinate_violated(&self, i: usize, v: f64) -> bool {
        v < self.lower[i] || v > self.upper[i]
    }

    /// Projects `x` onto the box in place. Used only to absorb rounding
    /// in geometric repairs whose exact result lies on the box.
    pub(crate) fn clamp_in_place(&self, x: &mut [f64]) {
        for (i, v) in x.iter_mut().enumerate() {
            *v = v.clamp(self.lower[i], self.upper[i]);
        }
    }

    pub fn sample_uniform(&self, rng: &mut RngStream) -> Vec<f64> {
        (0..self.dim())
            .map(|i| rng.uniform_in(self.lower[i], self.upper[i]))
            .collect()
    }
}

/// Declared feasibility sense of an inequality constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `g(x) >= 0` is feasible.
    NonNegative,
    /// `g(x) <= 0` is feasible.
    NonPositive,
}

/// Inequality constraint, stored normalized so that `value >= 0` is feasible.
#[derive(Clone)]
pub struct Inequality {
    pub name: String,
    func: ScalarFn,
}

impl Inequality {
    pub fn new(name: impl Into<String>, sense: Sense, func: ScalarFn) -> Self {
        let func = match sense {
            Sense::NonNegative => func,
            Sense::NonPositive => Arc::new(move |x: &[f64]| -func(x)) as ScalarFn,
        };
        Self { name: name.into(), func }
    }

    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        (self.func)(x)
    }

    pub fn function(&self) -> &ScalarFn {
        &self.func
    }
}

impl fmt::Debug for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Inequality").field("name", &self.name).finish()
    }
}

/// Equality constraint `h(x) = 0`, satisfied when `|h(x)| <= tolerance`.
#[derive(Clone)]
pub struct Equality {
    pub name: String,
    pub tolerance: f64,
    func: ScalarFn,
}

impl Equality {
    pub fn new(name: impl Into<String>, tolerance: f64, func: ScalarFn) -> Self {
        Self { name: name.into(), tolerance, func }
    }

    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        (self.func)(x)
    }

    pub fn function(&self) -> &ScalarFn {
        &self.func
    }
}

impl fmt::Debug for Equality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Equality")
            .field("name", &self.name)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

/// Minimization problem: objective, box, inequality and equality constraints.
///
/// When `box_enforced` is false the box only describes where initial
/// populations are sampled; it plays no part in feasibility.
#[derive(Clone)]
pub struct ConstrainedProblem {
    name: String,
    objective: ScalarFn,
    bounds: BoxBounds,
    box_enforced: bool,
    inequalities: Vec<Inequality>,
    equalities: Vec<Equality>,
    known_optimum_value: Option<f64>,
    known_optimum_point: Option<RealVector>,
    seed_solution: Option<RealVector>,
}

impl fmt::Debug for ConstrainedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstrainedProblem")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("box_enforced", &self.box_enforced)
            .field("inequalities", &self.inequalities)
            .field("equalities", &self.equalities)
            .field("known_optimum_value", &self.known_optimum_value)
            .finish()
    }
}

impl ConstrainedProblem {
    pub fn builder(name: impl Into<String>, bounds: BoxBounds, objective: ScalarFn) -> ProblemBuilder {
        ProblemBuilder {
            problem: ConstrainedProblem {
                name: name.into(),
                objective,
                bounds,
                box_enforced: true,
                inequalities: Vec::new(),
                equalities: Vec::new(),
                known_optimum_value: None,
                known_optimum_point: None,
                seed_solution: None,
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &BoxBounds {
        &self.bounds
    }

    pub fn box_enforced(&self) -> bool {
        self.box_enforced
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Equality] {
        &self.equalities
    }

    pub fn known_optimum_value(&self) -> Option<f64> {
        self.known_optimum_value
    }

    pub fn known_optimum_point(&self) -> Option<&RealVector> {
        self.known_optimum_point.as_ref()
    }

    /// Feasible reference point used to seed initial populations.
    pub fn seed_solution(&self) -> Option<&RealVector> {
        self.seed_solution.as_ref()
    }

    /// True when the only constraints are enforced variable bounds.
    pub fn is_box_only(&self) -> bool {
        self.box_enforced && self.inequalities.is_empty() && self.equalities.is_empty()
    }

    /// Raw objective value, uncounted.
    #[inline]
    pub fn objective_value(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn objective(&self) -> &ScalarFn {
        &self.objective
    }

    pub fn is_feasible(&self, x: &[f64]) -> Result<bool> {
        check_dim("point", self.dimension(), x.len())?;
        if self.box_enforced && !self.bounds.contains(x) {
            return Ok(false);
        }
        for g in &self.inequalities {
            let v = g.value(x);
            if !v.is_finite() {
                return Err(Error::NonFinite { what: "inequality constraint", value: v });
            }
            if v < 0.0 {
                return Ok(false);
            }
        }
        for h in &self.equalities {
            let v = h.value(x);
            if !v.is_finite() {
                return Err(Error::NonFinite { what: "equality constraint", value: v });
            }
            if v.abs() > h.tolerance {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `is_feasible` treating a non-finite constraint value as infeasible.
    #[inline]
    pub(crate) fn feasible_lenient(&self, x: &[f64]) -> bool {
        self.is_feasible(x).unwrap_or(false)
    }

    /// Normalized inequality values (`>= 0` feasible), in declaration order.
    pub fn inequality_values(&self, x: &[f64]) -> Vec<(String, f64)> {
        self.inequalities.iter().map(|g| (g.name.clone(), g.value(x))).collect()
    }
}

pub struct ProblemBuilder {
    problem: ConstrainedProblem,
}

impl ProblemBuilder {
    pub fn inequality(mut self, name: impl Into<String>, sense: Sense, func: ScalarFn) -> Self {
        self.problem.inequalities.push(Inequality::new(name, sense, func));
        self
    }

    pub fn equality(mut self, name: impl Into<String>, tolerance: f64, func: ScalarFn) -> Self {
        self.problem.equalities.push(Equality::new(name, tolerance, func));
        self
    }

    /// Keep the box for sampling only; it is not a constraint.
    pub fn sampling_box_only(mut self) -> Self {
        self.problem.box_enforced = false;
        self
    }

    pub fn optimum_value(mut self, f_star: f64) -> Self {
        self.problem.known_optimum_value = Some(f_star);
        self
    }

    pub fn optimum_point(mut self, x_star: RealVector) -> Self {
        self.problem.known_optimum_point = Some(x_star);
        self
    }

    pub fn seed_solution(mut self, seed: RealVector) -> Self {
        self.problem.seed_solution = Some(seed);
        self
    }

    pub fn build(self) -> Result<ConstrainedProblem> {
        let p = self.problem;
        let n = p.dimension();
        for e in &p.equalities {
            if !(e.tolerance >= 0.0) {
                return usage(format!("equality {} has a negative tolerance", e.name));
            }
        }
        if let Some(x) = &p.known_optimum_point {
            check_dim("known optimum", n, x.len())?;
            if p.box_enforced && !p.bounds.contains(x) {
                return usage("known optimum point lies outside the bounds");
            }
        }
        if let Some(s) = &p.seed_solution {
            check_dim("seed solution", n, s.len())?;
        }
        Ok(p)
    }
}

/// Objective evaluator with a hard evaluation budget.
///
/// Only objective calls are counted; constraint evaluations are free.
#[derive(Debug)]
pub struct CountedEvaluator<'a> {
    problem: &'a ConstrainedProblem,
    used: u64,
    budget: u64,
}

impl<'a> CountedEvaluator<'a> {
    pub fn new(problem: &'a ConstrainedProblem, budget: u64) -> Result<Self> {
        if budget == 0 {
            return usage("budget must be positive");
        }
        Ok(Self { problem, used: 0, budget })
    }

    pub fn problem(&self) -> &'a ConstrainedProblem {
        self.problem
    }

    pub fn evaluations_used(&self) -> u64 {
        self.used
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.budget
    }

    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        check_dim("point", self.problem.dimension(), x.len())?;
        if self.exhausted() {
            return Err(Error::BudgetExhausted { budget: self.budget });
        }
        self.used += 1;
        let f = self.problem.objective_value(x);
        if !f.is_finite() {
            return Err(Error::NonFinite { what: "objective", value: f });
        }
        Ok(f)
    }
}
