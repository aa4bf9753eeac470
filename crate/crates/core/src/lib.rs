//! Feasibility-preserving repair of infeasible candidates for
//! population-based optimizers.
//!
//! The crate provides box-bound repair strategies, their generalization to
//! nonlinear constraints, PSO, DE and real-coded GA drivers that use them,
//! a benchmark catalog, and an experiment harness.

pub mod benchmarks;
pub mod constraints;
pub mod error;
pub mod harness;
pub mod optimizers;
pub mod problem;
pub mod repair;
pub mod rng;

pub use error::{Error, Result};
pub use problem::{BoxBounds, ConstrainedProblem, CountedEvaluator, RealVector, Sense};
pub use repair::{RepairKind, RepairStrategy, VelocityPolicy};
pub use rng::RngStream;
