//! Simulated binary crossover and polynomial mutation.

use crate::error::{check_dim, usage, Result};
use crate::problem::BoxBounds;
use crate::rng::RngStream;

/// Coordinates closer than this are not recombined.
const SBX_MIN_GAP: f64 = 1e-14;

fn check_index(name: &str, eta: f64) -> Result<()> {
    if !(eta > 0.0) || !eta.is_finite() {
        return usage(format!("{name} must be positive, got {eta}"));
    }
    Ok(())
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return usage(format!("{name} must lie in [0, 1], got {p}"));
    }
    Ok(())
}

/// Unbounded SBX spread factor for draw `u`.
pub fn sbx_spread_factor(u: f64, eta_c: f64) -> f64 {
    let e = 1.0 / (eta_c + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(e)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(e)
    }
}

/// Spread factor whose distribution is truncated so the child on the side
/// of `beta` (the distance ratio to the bound) stays inside it.
fn bounded_spread_factor(u: f64, eta_c: f64, beta: f64) -> f64 {
    let e = 1.0 / (eta_c + 1.0);
    let alpha = 2.0 - beta.powf(-(eta_c + 1.0));
    if u <= 1.0 / alpha {
        (u * alpha).powf(e)
    } else {
        (1.0 / (2.0 - u * alpha)).powf(e)
    }
}

/// SBX on two parents. With probability `p_c` the pair is recombined, each
/// coordinate with probability one half. The rigid variant renormalizes the
/// spread distribution so both children stay within `bounds`.
pub fn sbx_crossover(
    p1: &[f64],
    p2: &[f64],
    eta_c: f64,
    p_c: f64,
    rigid: bool,
    bounds: &BoxBounds,
    rng: &mut RngStream,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_dim("first parent", bounds.dim(), p1.len())?;
    check_dim("second parent", bounds.dim(), p2.len())?;
    check_index("eta_c", eta_c)?;
    check_probability("p_c", p_c)?;
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.uniform() >= p_c {
        return Ok((c1, c2));
    }
    for j in 0..p1.len() {
        if !rng.coin() || (p1[j] - p2[j]).abs() <= SBX_MIN_GAP {
            continue;
        }
        let u = rng.uniform();
        if rigid {
            let (lo, hi) = (bounds.lower()[j], bounds.upper()[j]);
            let (y1, y2) = if p1[j] < p2[j] { (p1[j], p2[j]) } else { (p2[j], p1[j]) };
            let gap = y2 - y1;
            let b1 = bounded_spread_factor(u, eta_c, 1.0 + 2.0 * (y1 - lo).max(0.0) / gap);
            let b2 = bounded_spread_factor(u, eta_c, 1.0 + 2.0 * (hi - y2).max(0.0) / gap);
            let a = (0.5 * ((y1 + y2) - b1 * gap)).clamp(lo, hi);
            let b = (0.5 * ((y1 + y2) + b2 * gap)).clamp(lo, hi);
            if rng.coin() {
                c1[j] = b;
                c2[j] = a;
            } else {
                c1[j] = a;
                c2[j] = b;
            }
        } else {
            let beta = sbx_spread_factor(u, eta_c);
            c1[j] = 0.5 * ((1.0 + beta) * p1[j] + (1.0 - beta) * p2[j]);
            c2[j] = 0.5 * ((1.0 - beta) * p1[j] + (1.0 + beta) * p2[j]);
        }
    }
    Ok((c1, c2))
}

/// Polynomial-mutation perturbation `δ` for draw `u`, in units of the
/// interval width. The rigid form uses the distance of `x` to the bounds so
/// that `x + δ (hi - lo)` stays in `[lo, hi]`.
pub fn polynomial_delta(u: f64, eta_m: f64, rigid: bool, x: f64, lo: f64, hi: f64) -> f64 {
    let e = 1.0 / (eta_m + 1.0);
    if !rigid {
        return if u < 0.5 { (2.0 * u).powf(e) - 1.0 } else { 1.0 - (2.0 * (1.0 - u)).powf(e) };
    }
    let width = hi - lo;
    let d1 = ((x - lo) / width).clamp(0.0, 1.0);
    let d2 = ((hi - x) / width).clamp(0.0, 1.0);
    if u < 0.5 {
        let val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta_m + 1.0);
        val.powf(e) - 1.0
    } else {
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta_m + 1.0);
        1.0 - val.powf(e)
    }
}

/// Mutates each coordinate with probability `p_m`.
pub fn polynomial_mutation(
    x: &[f64],
    eta_m: f64,
    p_m: f64,
    rigid: bool,
    bounds: &BoxBounds,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    check_dim("point", bounds.dim(), x.len())?;
    check_index("eta_m", eta_m)?;
    check_probability("p_m", p_m)?;
    let mut y = x.to_vec();
    for (j, v) in y.iter_mut().enumerate() {
        if p_m == 0.0 || rng.uniform() >= p_m {
            continue;
        }
        let (lo, hi) = (bounds.lower()[j], bounds.upper()[j]);
        let d = polynomial_delta(rng.uniform(), eta_m, rigid, *v, lo, hi);
        *v += d * (hi - lo);
        if rigid {
            *v = v.clamp(lo, hi);
        }
    }
    Ok(y)
}
