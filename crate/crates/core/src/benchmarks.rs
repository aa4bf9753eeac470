//! Test-function catalog: four scalable unimodal functions under three
//! optimum placements, hypersphere-constrained variants, and the TP5, TP8
//! and welded-beam problems.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{usage, Error, Result};
use crate::problem::{BoxBounds, ConstrainedProblem, RealVector, ScalarFn, Sense};

/// Dimension used by the catalog when none is given.
pub const DEFAULT_DIMENSION: usize = 20;

/// Ellipsoidal function `sum_i i * x_i^2` (1-based `i`).
pub fn eval_elp(x: &[f64]) -> f64 {
    x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v * v).sum()
}

/// Schwefel's double sum `sum_i (sum_{j<=i} x_j)^2`.
pub fn eval_sch(x: &[f64]) -> f64 {
    let mut partial = 0.0;
    let mut total = 0.0;
    for v in x {
        partial += v;
        total += partial * partial;
    }
    total
}

/// Ackley's function with the `1/n` means inside both exponentials.
pub fn eval_ack(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    // grouped so both terms cancel exactly at the optimum
    let f = 20.0 * (1.0 - (-0.2 * sq.sqrt()).exp()) + (E - cs.exp());
    f.max(0.0)
}

/// Rosenbrock's valley.
pub fn eval_ros(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let a = w[0] * w[0] - w[1];
            100.0 * a * a + (w[0] - 1.0) * (w[0] - 1.0)
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Elp,
    Sch,
    Ack,
    Ros,
}

impl FunctionId {
    pub const ALL: [FunctionId; 4] = [FunctionId::Elp, FunctionId::Sch, FunctionId::Ack, FunctionId::Ros];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::Elp => "elp",
            FunctionId::Sch => "sch",
            FunctionId::Ack => "ack",
            FunctionId::Ros => "ros",
        }
    }

    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            FunctionId::Elp => eval_elp(x),
            FunctionId::Sch => eval_sch(x),
            FunctionId::Ack => eval_ack(x),
            FunctionId::Ros => eval_ros(x),
        }
    }

    pub fn objective(self) -> ScalarFn {
        match self {
            FunctionId::Elp => Arc::new(eval_elp),
            FunctionId::Sch => Arc::new(eval_sch),
            FunctionId::Ack => Arc::new(eval_ack),
            FunctionId::Ros => Arc::new(eval_ros),
        }
    }

    /// Coordinate value of the unconstrained minimizer.
    pub fn optimum_coordinate(self) -> f64 {
        match self {
            FunctionId::Ros => 1.0,
            _ => 0.0,
        }
    }

    fn min_dimension(self) -> usize {
        match self {
            FunctionId::Ros => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .map_or_else(|| usage(format!("unknown function `{s}`")), Ok)
    }
}

/// Where the optimum sits relative to the variable box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Placement {
    OnBoundary,
    AtCenter,
    CloseToBoundary,
}

impl Placement {
    pub const ALL: [Placement; 3] = [Placement::OnBoundary, Placement::AtCenter, Placement::CloseToBoundary];

    pub fn name(self) -> &'static str {
        match self {
            Placement::OnBoundary => "boundary",
            Placement::AtCenter => "center",
            Placement::CloseToBoundary => "close",
        }
    }

    /// Per-coordinate interval for `function` under this placement.
    pub fn interval(self, function: FunctionId) -> (f64, f64) {
        match (function, self) {
            (FunctionId::Ros, Placement::OnBoundary) => (1.0, 10.0),
            (FunctionId::Ros, Placement::AtCenter) => (-8.0, 10.0),
            (FunctionId::Ros, Placement::CloseToBoundary) => (0.0, 10.0),
            (_, Placement::OnBoundary) => (0.0, 10.0),
            (_, Placement::AtCenter) => (-10.0, 10.0),
            (_, Placement::CloseToBoundary) => (-1.0, 10.0),
        }
    }
}

impl fmt::Display for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Placement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Placement::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .map_or_else(|| usage(format!("unknown placement `{s}`")), Ok)
    }
}

/// A box-constrained benchmark instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub function: FunctionId,
    pub n: usize,
    pub placement: Placement,
    pub bounds: BoxBounds,
    pub f_star: f64,
    pub x_star: RealVector,
}

impl ScenarioSpec {
    pub fn id(&self) -> String {
        format!("{}:{}", self.function, self.placement)
    }

    pub fn to_problem(&self) -> Result<ConstrainedProblem> {
        ConstrainedProblem::builder(self.id(), self.bounds.clone(), self.function.objective())
            .optimum_value(self.f_star)
            .optimum_point(self.x_star.clone())
            .build()
    }
}

pub fn make_scenario(function: FunctionId, n: usize, placement: Placement) -> Result<ScenarioSpec> {
    if n < function.min_dimension() {
        return usage(format!("{function} needs n >= {}", function.min_dimension()));
    }
    let (lo, hi) = placement.interval(function);
    Ok(ScenarioSpec {
        function,
        n,
        placement,
        bounds: BoxBounds::uniform(n, lo, hi)?,
        f_star: 0.0,
        x_star: RealVector::filled(n, function.optimum_coordinate())?,
    })
}

/// Half-width of the sampling box attached to hypersphere problems.
pub const HYPERSPHERE_SAMPLING_HALF_WIDTH: f64 = 10.0;

/// `function` subject to `sum (x_i - o_i)^2 <= 1`, without variable bounds.
///
/// A box `[o - 10, o + 10]` is attached for initial sampling only. The
/// center is feasible and serves as the seed solution. When the center is
/// the unconstrained minimizer the known optimum is recorded.
pub fn make_hypersphere(function: FunctionId, n: usize, center: &[f64]) -> Result<ConstrainedProblem> {
    if center.len() != n {
        return usage(format!("center has dimension {}, expected {n}", center.len()));
    }
    if n < function.min_dimension() {
        return usage(format!("{function} needs n >= {}", function.min_dimension()));
    }
    let o = RealVector::new(center.to_vec())?;
    let w = HYPERSPHERE_SAMPLING_HALF_WIDTH;
    let bounds = BoxBounds::new(
        o.iter().map(|c| c - w).collect(),
        o.iter().map(|c| c + w).collect(),
    )?;
    let oc = o.clone();
    let ball: ScalarFn = Arc::new(move |x: &[f64]| {
        1.0 - x.iter().zip(oc.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>()
    });
    let label = if o.iter().all(|c| *c == o[0]) {
        format!("sphere-{}-{}", function, o[0])
    } else {
        format!("sphere-{function}")
    };
    let mut b = ConstrainedProblem::builder(label, bounds, function.objective())
        .sampling_box_only()
        .inequality("ball", Sense::NonNegative, ball)
        .seed_solution(o.clone());
    let xs = vec![function.optimum_coordinate(); n];
    let dist2: f64 = xs.iter().zip(o.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
    if dist2 <= 1.0 {
        b = b.optimum_value(0.0).optimum_point(RealVector::new(xs)?);
    }
    b.build()
}

fn fixed(values: &[f64]) -> RealVector {
    RealVector::new(values.to_vec()).expect("catalog constants are finite")
}

/// Feasible seed for TP5 (random feasible draw, pinned).
pub const TP5_SEED: [f64; 7] = [-1.169, 0.607, -2.963, -4.452, -9.34, -6.403, 4.104];
/// Feasible seed for TP8 (random feasible draw, pinned).
pub const TP8_SEED: [f64; 10] = [1.767, 3.125, 4.246, 6.269, -0.96, 8.888, 8.948, -2.725, 6.624, 8.2];
/// Feasible seed for the welded beam, order `(h, l, t, b)`.
pub const WELD_SEED: [f64; 4] = [0.651, 5.52, 7.306, 2.977];

pub const TP5_REPORTED_OPTIMUM: [f64; 7] = [2.330, 1.953, -0.473, 4.362, -0.628, 1.035, 1.591];
pub const TP8_REPORTED_OPTIMUM: [f64; 10] = [2.160, 2.393, 8.777, 5.088, 0.999, 1.437, 1.298, 9.810, 8.209, 8.277];
pub const WELD_REPORTED_OPTIMUM: [f64; 4] = [0.244, 6.219, 8.291, 0.244];

fn tp5_objective(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4, x5, x6, x7) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
    (x1 - 10.0).powi(2) + 5.0 * (x2 - 12.0).powi(2) + x3.powi(4) + 3.0 * (x4 - 11.0).powi(2)
        + 10.0 * x5.powi(6)
        + 7.0 * x6 * x6
        + x7.powi(4)
        - 4.0 * x6 * x7
        - 10.0 * x6
        - 8.0 * x7
}

pub fn make_tp5() -> Result<ConstrainedProblem> {
    let le = Sense::NonNegative;
    ConstrainedProblem::builder("tp5", BoxBounds::uniform(7, -10.0, 10.0)?, Arc::new(tp5_objective))
        .inequality("g1", le, Arc::new(|x: &[f64]| {
            127.0 - (2.0 * x[0] * x[0] + 3.0 * x[1].powi(4) + x[2] + 4.0 * x[3] * x[3] + 5.0 * x[4])
        }))
        .inequality("g2", le, Arc::new(|x: &[f64]| {
            282.0 - (7.0 * x[0] + 3.0 * x[1] + 10.0 * x[2] * x[2] + x[3] - x[4])
        }))
        .inequality("g3", le, Arc::new(|x: &[f64]| {
            196.0 - (23.0 * x[0] + x[1] * x[1] + 6.0 * x[5] * x[5] - 8.0 * x[6])
        }))
        .inequality("g4", Sense::NonPositive, Arc::new(|x: &[f64]| {
            4.0 * x[0] * x[0] + x[1] * x[1] - 3.0 * x[0] * x[1] + 2.0 * x[2] * x[2] + 5.0 * x[5] - 11.0 * x[6]
        }))
        .optimum_value(680.63)
        .optimum_point(fixed(&TP5_REPORTED_OPTIMUM))
        .seed_solution(fixed(&TP5_SEED))
        .build()
}

fn tp8_objective(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    x1 * x1 + x2 * x2 + x1 * x2 - 14.0 * x1 - 16.0 * x2
        + 2.0 * (x[8] - 10.0).powi(2)
        + 2.0 * (x[5] - 1.0).powi(2)
        + 5.0 * x[6] * x[6]
        + 7.0 * (x[7] - 11.0).powi(2)
        + 45.0
        + (x[9] - 7.0).powi(2)
        + (x[2] - 10.0).powi(2)
        + 4.0 * (x[3] - 5.0).powi(2)
        + (x[4] - 3.0).powi(2)
}

pub fn make_tp8() -> Result<ConstrainedProblem> {
    let ge = Sense::NonNegative;
    let le = Sense::NonPositive;
    ConstrainedProblem::builder("tp8", BoxBounds::uniform(10, -10.0, 10.0)?, Arc::new(tp8_objective))
        .inequality("g1", ge, Arc::new(|x: &[f64]| 105.0 - (4.0 * x[0] + 5.0 * x[1] - 3.0 * x[6] + 9.0 * x[7])))
        .inequality("g2", le, Arc::new(|x: &[f64]| 10.0 * x[0] - 8.0 * x[1] - 17.0 * x[6] + 2.0 * x[7]))
        .inequality("g3", ge, Arc::new(|x: &[f64]| 12.0 - (-8.0 * x[0] + 2.0 * x[1] + 5.0 * x[8] - 2.0 * x[9])))
        .inequality("g4", ge, Arc::new(|x: &[f64]| {
            120.0 - (3.0 * (x[0] - 2.0).powi(2) + 4.0 * (x[1] - 3.0).powi(2) + 2.0 * x[2] * x[2] - 7.0 * x[3])
        }))
        .inequality("g5", ge, Arc::new(|x: &[f64]| {
            40.0 - (5.0 * x[0] * x[0] + 8.0 * x[1] + (x[2] - 6.0).powi(2) - 2.0 * x[3])
        }))
        .inequality("g6", le, Arc::new(|x: &[f64]| {
            x[0] * x[0] + 2.0 * (x[1] - 2.0).powi(2) - 2.0 * x[0] * x[1] + 14.0 * x[4] - 6.0 * x[5]
        }))
        .inequality("g7", ge, Arc::new(|x: &[f64]| {
            30.0 - (0.5 * (x[0] - 8.0).powi(2) + 2.0 * (x[1] - 4.0).powi(2) + 3.0 * x[4] * x[4] - x[5])
        }))
        .inequality("g8", le, Arc::new(|x: &[f64]| {
            -3.0 * x[0] + 6.0 * x[1] + 12.0 * (x[8] - 8.0).powi(2) - 7.0 * x[9]
        }))
        .optimum_value(24.33)
        .optimum_point(fixed(&TP8_REPORTED_OPTIMUM))
        .seed_solution(fixed(&TP8_SEED))
        .build()
}

/// Intermediate quantities of the welded-beam model at `(h, l, t, b)`.
#[derive(Debug, Clone, Copy)]
pub struct WeldResponse {
    pub tau: f64,
    pub sigma: f64,
    pub delta: f64,
    pub buckling_load: f64,
}

pub fn weld_response(x: &[f64]) -> WeldResponse {
    let (h, l, t, b) = (x[0], x[1], x[2], x[3]);
    let tau_p = 6000.0 / (2f64.sqrt() * h * l);
    let r = (0.25 * (l * l + (h + t) * (h + t))).sqrt();
    let tau_pp = 6000.0 * (14.0 + 0.5 * l) * r
        / (2.0 * (0.707 * h * l * (l * l / 12.0 + 0.25 * (h + t) * (h + t))));
    let tau = (tau_p * tau_p + tau_pp * tau_pp + l * tau_p * tau_pp / r).sqrt();
    WeldResponse {
        tau,
        sigma: 504_000.0 / (t * t * b),
        delta: 2.1952 / (t * t * t * b),
        buckling_load: 64_746.022 * (1.0 - 0.028_234_6 * t) * t * b * b * b,
    }
}

fn weld_objective(x: &[f64]) -> f64 {
    let (h, l, t, b) = (x[0], x[1], x[2], x[3]);
    1.104_71 * h * h * l + 0.048_11 * t * b * (14.0 + l)
}

/// Welded beam in variable order `(h, l, t, b)`.
pub fn make_weld() -> Result<ConstrainedProblem> {
    let ge = Sense::NonNegative;
    let bounds = BoxBounds::new(vec![0.125, 0.1, 0.1, 0.125], vec![5.0, 10.0, 10.0, 5.0])?;
    ConstrainedProblem::builder("weld", bounds, Arc::new(weld_objective))
        .inequality("g1", ge, Arc::new(|x: &[f64]| 13_600.0 - weld_response(x).tau))
        .inequality("g2", ge, Arc::new(|x: &[f64]| 30_000.0 - weld_response(x).sigma))
        .inequality("g3", Sense::NonPositive, Arc::new(|x: &[f64]| x[0] - x[3]))
        .inequality("g4", ge, Arc::new(|x: &[f64]| weld_response(x).buckling_load - 6_000.0))
        .inequality("g5", ge, Arc::new(|x: &[f64]| 0.25 - weld_response(x).delta))
        .optimum_value(2.38)
        .optimum_point(fixed(&WELD_REPORTED_OPTIMUM))
        .seed_solution(fixed(&WELD_SEED))
        .build()
}

/// Resolves a catalog id.
///
/// Box scenarios are `elp|sch|ack|ros[:boundary|:center|:close]` (default
/// placement `center`) with dimension `n`. Hypersphere problems are
/// `sphere-<fn>-<o>` with every center coordinate equal to `o`, also of
/// dimension `n`. `tp5`, `tp8` and `weld` have fixed dimensions.
pub fn problem_from_id(id: &str, n: usize) -> Result<ConstrainedProblem> {
    match id {
        "tp5" => return make_tp5(),
        "tp8" => return make_tp8(),
        "weld" => return make_weld(),
        _ => {}
    }
    if let Some(rest) = id.strip_prefix("sphere-") {
        let (f, o) = rest
            .split_once('-')
            .ok_or_else(|| Error::Usage(format!("malformed hypersphere id `{id}`")))?;
        let o: f64 = o
            .parse()
            .map_err(|_| Error::Usage(format!("malformed hypersphere center in `{id}`")))?;
        return make_hypersphere(f.parse()?, n, &vec![o; n]);
    }
    scenario_from_id(id, n)?.to_problem()
}

pub fn scenario_from_id(id: &str, n: usize) -> Result<ScenarioSpec> {
    let (f, p) = match id.split_once(':') {
        Some((f, p)) => (f, p.parse()?),
        None => (id, Placement::AtCenter),
    };
    make_scenario(f.parse()?, n, p)
}
