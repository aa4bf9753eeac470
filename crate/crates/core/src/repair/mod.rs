//! Feasibility-preserving repair of points that left the variable box.
//!
//! Variable-wise strategies (`Random`, `Periodic`, `SetOnBoundary`,
//! `ExpConfined`, `ExpSpread`) only move the coordinates that violate their
//! bounds. Vector-wise strategies (`Shrink`, `IpConfined`, `IpSpread`) move
//! the whole point along the ray from the infeasible child to its parent.

mod variable;
mod vector;
mod velocity;

use std::fmt;
use std::str::FromStr;

pub use variable::{
    repair_exp_confined, repair_exp_confined_with, repair_exp_spread, repair_exp_spread_with,
    repair_periodic, repair_random, repair_set_on_boundary,
};
pub(crate) use vector::{ip_distance_guarded, unit_direction};
pub use vector::{
    box_ray_segment, ip_cdf, ip_sample_distance, repair_ip, repair_ip_with, repair_shrink, IpMode,
    RaySegment,
};
pub use velocity::{hyperbolic_clamp_velocity, VelocityPolicy};

use crate::error::{check_dim, usage, Error, Result};
use crate::problem::BoxBounds;
use crate::rng::RngStream;

/// Recommended inverse-parabolic width.
pub const DEFAULT_IP_ALPHA: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepairKind {
    Random,
    Periodic,
    SetOnBoundary,
    ExpConfined,
    ExpSpread,
    Shrink,
    IpConfined,
    IpSpread,
}

impl RepairKind {
    pub const ALL: [RepairKind; 8] = [
        RepairKind::IpSpread,
        RepairKind::IpConfined,
        RepairKind::ExpSpread,
        RepairKind::ExpConfined,
        RepairKind::Periodic,
        RepairKind::Random,
        RepairKind::SetOnBoundary,
        RepairKind::Shrink,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RepairKind::Random => "random",
            RepairKind::Periodic => "periodic",
            RepairKind::SetOnBoundary => "setonboundary",
            RepairKind::ExpConfined => "exp-c",
            RepairKind::ExpSpread => "exp-s",
            RepairKind::Shrink => "shrink",
            RepairKind::IpConfined => "ip-c",
            RepairKind::IpSpread => "ip-s",
        }
    }

    /// Vector-wise strategies that need a parent reference point.
    pub fn is_vector_wise(self) -> bool {
        matches!(self, RepairKind::Shrink | RepairKind::IpConfined | RepairKind::IpSpread)
    }

    pub fn is_inverse_parabolic(self) -> bool {
        matches!(self, RepairKind::IpConfined | RepairKind::IpSpread)
    }
}

/// A repair method together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepairStrategy {
    pub kind: RepairKind,
    /// Inverse-parabolic width; ignored by the other kinds.
    pub alpha: f64,
}

impl RepairStrategy {
    pub fn new(kind: RepairKind) -> Self {
        Self { kind, alpha: DEFAULT_IP_ALPHA }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return usage(format!("alpha must be positive and finite, got {alpha}"));
        }
        self.alpha = alpha;
        Ok(self)
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn ip_mode(&self) -> Option<IpMode> {
        match self.kind {
            RepairKind::IpConfined => Some(IpMode::Confined),
            RepairKind::IpSpread => Some(IpMode::Spread),
            _ => None,
        }
    }

    /// Repairs `child` against `bounds`, using `parent` as the reference for
    /// the parent-centric kinds. Feasible children are returned unchanged.
    ///
    /// When the reference is unusable (outside the box, or equal to the child)
    /// the repair falls back to [`repair_random`].
    pub fn apply(
        &self,
        child: &[f64],
        parent: &[f64],
        bounds: &BoxBounds,
        rng: &mut RngStream,
    ) -> Result<Vec<f64>> {
        check_dim("child", bounds.dim(), child.len())?;
        check_dim("parent", bounds.dim(), parent.len())?;
        if bounds.contains(child) {
            return Ok(child.to_vec());
        }
        let out = match self.kind {
            RepairKind::Random => return repair_random(child, bounds, rng),
            RepairKind::Periodic => return repair_periodic(child, bounds),
            RepairKind::SetOnBoundary => return repair_set_on_boundary(child, bounds),
            RepairKind::ExpSpread => return repair_exp_spread(child, bounds, rng),
            RepairKind::ExpConfined => repair_exp_confined(child, parent, bounds, rng),
            RepairKind::Shrink => repair_shrink(child, parent, bounds),
            RepairKind::IpConfined => repair_ip(child, parent, bounds, IpMode::Confined, self.alpha, rng),
            RepairKind::IpSpread => repair_ip(child, parent, bounds, IpMode::Spread, self.alpha, rng),
        };
        match out {
            Err(Error::Usage(_)) => repair_random(child, bounds, rng),
            other => other,
        }
    }
}

impl fmt::Display for RepairStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RepairKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RepairKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .map_or_else(|| usage(format!("unknown repair strategy `{s}`")), Ok)
    }
}

impl FromStr for RepairStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(RepairStrategy::new(s.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in RepairKind::ALL {
            assert_eq!(k.name().parse::<RepairKind>().unwrap(), k);
        }
        assert!("hyperbolic".parse::<RepairKind>().is_err());
        assert_eq!(RepairStrategy::new(RepairKind::IpSpread).alpha, 1.2);
    }

    #[test]
    fn alpha_must_be_positive() {
        let s = RepairStrategy::new(RepairKind::IpSpread);
        assert!(s.with_alpha(0.0).is_err());
        assert!(s.with_alpha(-1.0).is_err());
        assert_eq!(s.with_alpha(10.0).unwrap().alpha, 10.0);
    }

    #[test]
    fn identity_on_feasible() {
        let b = BoxBounds::uniform(3, -1.0, 1.0).unwrap();
        let mut rng = RngStream::new(0);
        let x = [0.1, -0.9, 1.0];
        for k in RepairKind::ALL {
            assert_eq!(RepairStrategy::new(k).apply(&x, &[0.0; 3], &b, &mut rng).unwrap(), x.to_vec());
        }
    }

    #[test]
    fn unusable_parent_falls_back_to_random() {
        let b = BoxBounds::uniform(2, 0.0, 10.0).unwrap();
        let mut rng = RngStream::new(0);
        for k in [RepairKind::Shrink, RepairKind::IpConfined, RepairKind::IpSpread, RepairKind::ExpConfined] {
            let y = RepairStrategy::new(k).apply(&[-1.0, 5.0], &[-2.0, 5.0], &b, &mut rng).unwrap();
            assert!(b.contains(&y));
            assert_eq!(y[1], 5.0);
        }
    }
}
