//! Vector-wise repairs that move the whole point along the child-parent ray.

use crate::error::{check_dim, usage, Result};
use crate::problem::BoxBounds;
use crate::rng::RngStream;

/// Floor applied to a zero entry distance before inverse-parabolic sampling.
pub(crate) fn degenerate_entry_distance(a: f64) -> f64 {
    (1e-6 * a).max(1e-12)
}

/// Feasible interval along the ray from an infeasible child towards its parent.
#[derive(Debug, Clone, PartialEq)]
pub struct RaySegment {
    /// Distance from the child to where the ray enters the feasible region.
    pub d_v: f64,
    /// Distance from the child to the parent.
    pub d_p: f64,
    /// Distance from the child to where the ray leaves the feasible region.
    pub d_u: f64,
    /// Unit vector from the child towards the parent.
    pub unit_direction: Vec<f64>,
}

impl RaySegment {
    pub fn point_at(&self, child: &[f64], d: f64) -> Vec<f64> {
        child.iter().zip(&self.unit_direction).map(|(c, u)| c + d * u).collect()
    }
}

/// Which end of the ray bounds the inverse-parabolic density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpMode {
    /// Between the entry point and the parent.
    Confined,
    /// Between the entry point and the exit point.
    Spread,
}

/// Unit direction and length of `to - from`. `None` when the points coincide.
pub(crate) fn unit_direction(from: &[f64], to: &[f64]) -> Option<(Vec<f64>, f64)> {
    let diff: Vec<f64> = to.iter().zip(from).map(|(t, f)| t - f).collect();
    let len = diff.iter().map(|d| d * d).sum::<f64>().sqrt();
    if !(len > 0.0) || !len.is_finite() {
        return None;
    }
    Some((diff.into_iter().map(|d| d / len).collect(), len))
}

/// Shrink repair: the point where the segment `reference -> x` leaves the box.
///
/// The reference may sit on the box surface, in which case the result can be
/// the reference itself.
pub fn repair_shrink(x: &[f64], reference: &[f64], bounds: &BoxBounds) -> Result<Vec<f64>> {
    check_dim("point", bounds.dim(), x.len())?;
    check_dim("reference", bounds.dim(), reference.len())?;
    if !bounds.contains(reference) {
        return usage("shrink reference lies outside the box");
    }
    if bounds.contains(x) {
        return Ok(x.to_vec());
    }
    let mut beta = 1.0_f64;
    let mut binding: Option<(usize, f64)> = None;
    for i in 0..x.len() {
        let (lo, hi) = (bounds.lower()[i], bounds.upper()[i]);
        let bound = if x[i] < lo {
            lo
        } else if x[i] > hi {
            hi
        } else {
            continue;
        };
        let b = (bound - reference[i]) / (x[i] - reference[i]);
        if b < beta {
            beta = b.max(0.0);
            binding = Some((i, bound));
        }
    }
    let mut y: Vec<f64> = x
        .iter()
        .zip(reference)
        .map(|(xi, ri)| ri + beta * (xi - ri))
        .collect();
    if let Some((i, bound)) = binding {
        y[i] = bound;
    }
    bounds.clamp_in_place(&mut y);
    Ok(y)
}

/// Entry, parent and exit distances of the ray from `child` through `parent`
/// against the box.
pub fn box_ray_segment(child: &[f64], parent: &[f64], bounds: &BoxBounds) -> Result<RaySegment> {
    check_dim("child", bounds.dim(), child.len())?;
    check_dim("parent", bounds.dim(), parent.len())?;
    if !bounds.contains(parent) {
        return usage("ray parent is infeasible");
    }
    let Some((u, d_p)) = unit_direction(child, parent) else {
        return usage("ray parent coincides with the child");
    };
    let mut d_v = 0.0_f64;
    let mut d_u = f64::INFINITY;
    for i in 0..child.len() {
        if u[i] == 0.0 {
            continue;
        }
        let t1 = (bounds.lower()[i] - child[i]) / u[i];
        let t2 = (bounds.upper()[i] - child[i]) / u[i];
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        d_v = d_v.max(lo);
        d_u = d_u.min(hi);
    }
    Ok(RaySegment {
        d_v: d_v.min(d_p),
        d_p,
        d_u: d_u.max(d_p),
        unit_direction: u,
    })
}

/// Inverse-transform draw from the inverse-parabolic density
/// `p(d) ∝ 1 / ((d - d_v)^2 + alpha^2 d_v^2)` on `[d_v, a]`.
pub fn ip_sample_distance(d_v: f64, a: f64, alpha: f64, r: f64) -> Result<f64> {
    if !(d_v > 0.0 && d_v < a) {
        return usage(format!("need 0 < d_v < a, got d_v = {d_v}, a = {a}"));
    }
    if !(alpha > 0.0) {
        return usage(format!("alpha must be positive, got {alpha}"));
    }
    if !(0.0..=1.0).contains(&r) {
        return usage(format!("draw must lie in [0, 1], got {r}"));
    }
    let spread = alpha * d_v;
    let d = d_v + spread * (r * ((a - d_v) / spread).atan()).tan();
    Ok(d.clamp(d_v, a))
}

/// Analytic CDF of [`ip_sample_distance`].
pub fn ip_cdf(d: f64, d_v: f64, a: f64, alpha: f64) -> f64 {
    let spread = alpha * d_v;
    (((d - d_v) / spread).atan() / ((a - d_v) / spread).atan()).clamp(0.0, 1.0)
}

/// Distance drawn on `[d_v, a]` with the degenerate-case rules applied:
/// a zero entry distance is floored, an empty interval returns its end.
pub(crate) fn ip_distance_guarded(d_v: f64, a: f64, alpha: f64, r: f64) -> f64 {
    if a <= d_v {
        return a.max(0.0);
    }
    let d_v = if d_v > 0.0 { d_v } else { degenerate_entry_distance(a) };
    if a <= d_v {
        return a;
    }
    ip_sample_distance(d_v, a, alpha, r).unwrap_or(d_v)
}

/// Inverse-parabolic repair against the box (confined or spread).
pub fn repair_ip(
    child: &[f64],
    parent: &[f64],
    bounds: &BoxBounds,
    mode: IpMode,
    alpha: f64,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    let r = rng.uniform();
    repair_ip_with(child, parent, bounds, mode, alpha, r)
}

/// [`repair_ip`] with an explicit draw `r` in `[0, 1]`.
pub fn repair_ip_with(
    child: &[f64],
    parent: &[f64],
    bounds: &BoxBounds,
    mode: IpMode,
    alpha: f64,
    r: f64,
) -> Result<Vec<f64>> {
    if !(alpha > 0.0) {
        return usage(format!("alpha must be positive, got {alpha}"));
    }
    if bounds.in_box(child)? {
        return Ok(child.to_vec());
    }
    let seg = box_ray_segment(child, parent, bounds)?;
    let a = match mode {
        IpMode::Confined => seg.d_p,
        IpMode::Spread => seg.d_u,
    };
    let d = ip_distance_guarded(seg.d_v, a, alpha, r);
    let mut y = seg.point_at(child, d);
    bounds.clamp_in_place(&mut y);
    Ok(y)
}
