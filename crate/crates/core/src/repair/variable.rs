//! Variable-wise repairs: only coordinates that violate their own bound move.

use crate::error::{check_dim, usage, Result};
use crate::problem::BoxBounds;
use crate::rng::RngStream;

/// `ln(1 + r (e^span - 1))`, the inverse transform shared by the
/// exponential repairs. Lies in `[0, span]` for `r` in `[0, 1]`.
pub(crate) fn exp_offset(span: f64, r: f64) -> f64 {
    if span <= 0.0 {
        return 0.0;
    }
    let v = if span < 700.0 {
        (r * span.exp_m1()).ln_1p()
    } else {
        span + (r + (1.0 - r) * (-span).exp()).ln()
    };
    v.clamp(0.0, span)
}

/// Replaces each violated coordinate with a uniform draw over its interval.
pub fn repair_random(x: &[f64], bounds: &BoxBounds, rng: &mut RngStream) -> Result<Vec<f64>> {
    check_dim("point", bounds.dim(), x.len())?;
    let mut y = x.to_vec();
    for (i, v) in y.iter_mut().enumerate() {
        if bounds.coordinate_violated(i, *v) {
            *v = rng.uniform_in(bounds.lower()[i], bounds.upper()[i]);
        }
    }
    Ok(y)
}

/// Wraps violated coordinates around as if the landscape repeated with
/// period `upper - lower`.
pub fn repair_periodic(x: &[f64], bounds: &BoxBounds) -> Result<Vec<f64>> {
    check_dim("point", bounds.dim(), x.len())?;
    let mut y = x.to_vec();
    for (i, v) in y.iter_mut().enumerate() {
        let (lo, hi) = (bounds.lower()[i], bounds.upper()[i]);
        let p = hi - lo;
        if *v < lo {
            *v = (hi - (lo - *v).rem_euclid(p)).clamp(lo, hi);
        } else if *v > hi {
            *v = (lo + (*v - hi).rem_euclid(p)).clamp(lo, hi);
        }
    }
    Ok(y)
}

/// Resets violated coordinates onto the bound they cross.
pub fn repair_set_on_boundary(x: &[f64], bounds: &BoxBounds) -> Result<Vec<f64>> {
    check_dim("point", bounds.dim(), x.len())?;
    let mut y = x.to_vec();
    bounds.clamp_in_place(&mut y);
    Ok(y)
}

/// Exponentially confined repair: each violated coordinate is resampled
/// between the parent's coordinate and the violated bound, with density
/// growing towards the bound.
pub fn repair_exp_confined(
    x: &[f64],
    parent: &[f64],
    bounds: &BoxBounds,
    rng: &mut RngStream,
) -> Result<Vec<f64>> {
    exp_confined_impl(x, parent, bounds, || rng.uniform())
}

/// [`repair_exp_confined`] with the same draw `r` for every violated coordinate.
pub fn repair_exp_confined_with(x: &[f64], parent: &[f64], bounds: &BoxBounds, r: f64) -> Result<Vec<f64>> {
    exp_confined_impl(x, parent, bounds, || r)
}

fn exp_confined_impl(
    x: &[f64],
    parent: &[f64],
    bounds: &BoxBounds,
    mut draw: impl FnMut() -> f64,
) -> Result<Vec<f64>> {
    check_dim("point", bounds.dim(), x.len())?;
    check_dim("parent", bounds.dim(), parent.len())?;
    let mut y = x.to_vec();
    for i in 0..y.len() {
        let (lo, hi) = (bounds.lower()[i], bounds.upper()[i]);
        let xp = parent[i];
        if !bounds.coordinate_violated(i, y[i]) {
            continue;
        }
        if !(lo..=hi).contains(&xp) {
            return usage(format!("parent coordinate {i} = {xp} lies outside [{lo}, {hi}]"));
        }
        y[i] = if y[i] < lo {
            (xp - exp_offset(xp - lo, draw())).clamp(lo, xp)
        } else {
            (xp + exp_offset(hi - xp, draw())).clamp(xp, hi)
        };
    }
    Ok(y)
}

/// Exponential spread repair: the resampled coordinate may land anywhere in
/// its interval, most likely near the violated bound.
pub fn repair_exp_spread(x: &[f64], bounds: &BoxBounds, rng: &mut RngStream) -> Result<Vec<f64>> {
    exp_spread_impl(x, bounds, || rng.uniform())
}

/// [`repair_exp_spread`] with a fixed draw `r`.
pub fn repair_exp_spread_with(x: &[f64], bounds: &BoxBounds, r: f64) -> Result<Vec<f64>> {
    exp_spread_impl(x, bounds, || r)
}

fn exp_spread_impl(x: &[f64], bounds: &BoxBounds, mut draw: impl FnMut() -> f64) -> Result<Vec<f64>> {
    check_dim("point", bounds.dim(), x.len())?;
    let mut y = x.to_vec();
    for (i, v) in y.iter_mut().enumerate() {
        let (lo, hi) = (bounds.lower()[i], bounds.upper()[i]);
        if *v < lo {
            *v = (hi - exp_offset(hi - lo, draw())).clamp(lo, hi);
        } else if *v > hi {
            *v = (lo + exp_offset(hi - lo, draw())).clamp(lo, hi);
        }
    }
    Ok(y)
}
