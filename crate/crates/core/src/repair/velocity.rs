//! Post-repair velocity rules for particle swarms.

use std::fmt;
use std::str::FromStr;

use crate::error::{usage, Error, Result};
use crate::problem::BoxBounds;

/// How a particle's velocity is set after its position was repaired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VelocityPolicy {
    /// Keep the velocity that produced the infeasible position.
    Unchanged,
    /// Use the displacement to the repaired position.
    Recomputed,
    /// Negate the components of coordinates that were set onto a bound.
    Reflected,
    /// Zero the components of coordinates that were set onto a bound.
    SetToZero,
    /// Damp the velocity before the move so the particle never leaves the box.
    Hyperbolic,
}

impl VelocityPolicy {
    pub fn name(self) -> &'static str {
        match self {
            VelocityPolicy::Unchanged => "unchanged",
            VelocityPolicy::Recomputed => "recomputed",
            VelocityPolicy::Reflected => "reflected",
            VelocityPolicy::SetToZero => "zero",
            VelocityPolicy::Hyperbolic => "hyperbolic",
        }
    }

    /// New velocity after a repair of `infeasible` into `repaired`, where the
    /// particle moved from `previous` with velocity `velocity`.
    ///
    /// For `Reflected` and `SetToZero` the components of coordinates that did
    /// not violate a bound take the recomputed displacement.
    pub fn post_repair_velocity(
        self,
        velocity: &[f64],
        previous: &[f64],
        infeasible: &[f64],
        repaired: &[f64],
        bounds: &BoxBounds,
    ) -> Vec<f64> {
        let n = velocity.len();
        match self {
            VelocityPolicy::Unchanged | VelocityPolicy::Hyperbolic => velocity.to_vec(),
            VelocityPolicy::Recomputed => (0..n).map(|i| repaired[i] - previous[i]).collect(),
            VelocityPolicy::Reflected | VelocityPolicy::SetToZero => (0..n)
                .map(|i| {
                    if bounds.coordinate_violated(i, infeasible[i]) {
                        if self == VelocityPolicy::Reflected {
                            -velocity[i]
                        } else {
                            0.0
                        }
                    } else {
                        repaired[i] - previous[i]
                    }
                })
                .collect(),
        }
    }
}

impl fmt::Display for VelocityPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VelocityPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "unchanged" => VelocityPolicy::Unchanged,
            "recomputed" => VelocityPolicy::Recomputed,
            "reflected" => VelocityPolicy::Reflected,
            "zero" => VelocityPolicy::SetToZero,
            "hyperbolic" => VelocityPolicy::Hyperbolic,
            other => return usage(format!("unknown velocity policy `{other}`")),
        })
    }
}

/// Hyperbolic velocity damping for one coordinate at position `x`, strictly
/// inside `(lower, upper)`. The damped step never reaches either bound.
pub fn hyperbolic_clamp_velocity(v: f64, x: f64, lower: f64, upper: f64) -> Result<f64> {
    if !(lower < x && x < upper) {
        return usage(format!("position {x} is not strictly inside ({lower}, {upper})"));
    }
    let room = (upper - x).min(x - lower);
    Ok(v / (1.0 + v.abs() / room))
}
