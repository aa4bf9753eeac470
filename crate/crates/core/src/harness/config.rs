//! Strategy × problem grids described in TOML.
//!
//! ```toml
//! optimizer = "pso"
//! problems = ["elp:boundary", "elp:center"]
//! runs = 50
//!
//! [[strategies]]
//! repair = "exp-c"
//! velocity = "recomputed"
//!
//! [[strategies]]
//! repair = "hyperbolic"
//!
//! [overrides]
//! population = 100
//! ```

use serde::Deserialize;

use super::{recommended_settings, ExperimentSpec};
use crate::benchmarks::DEFAULT_DIMENSION;
use crate::error::{usage, Error, Result};
use crate::optimizers::{parse_strategy, Optimizer, OptimizerKind};
use crate::repair::VelocityPolicy;

/// Optional parameter overrides; each applies only to the optimizers that
/// have the parameter.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerOverrides {
    pub population: Option<usize>,
    pub inertia: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub f: Option<f64>,
    pub cr: Option<f64>,
    pub p_c: Option<f64>,
    pub p_m: Option<f64>,
    pub eta_c: Option<f64>,
    pub eta_m: Option<f64>,
    /// DE crossover, `bin` or `exp`.
    pub crossover: Option<String>,
    /// DE repair reference, `base` or `target`.
    pub reference: Option<String>,
}

impl OptimizerOverrides {
    pub fn apply(&self, opt: &mut Optimizer) -> Result<()> {
        let kind = opt.kind();
        let misplaced = |name: &str| -> Result<()> { usage(format!("`{name}` does not apply to {kind}")) };
        if !matches!(opt, Optimizer::De(_)) {
            if self.crossover.is_some() {
                return misplaced("crossover");
            }
            if self.reference.is_some() {
                return misplaced("reference");
            }
        }
        match opt {
            Optimizer::Pso(c) => {
                for (n, v) in [("f", self.f), ("cr", self.cr), ("p_c", self.p_c), ("p_m", self.p_m), ("eta_c", self.eta_c), ("eta_m", self.eta_m)] {
                    if v.is_some() {
                        return misplaced(n);
                    }
                }
                c.population = self.population.unwrap_or(c.population);
                c.inertia = self.inertia.unwrap_or(c.inertia);
                c.c1 = self.c1.unwrap_or(c.c1);
                c.c2 = self.c2.unwrap_or(c.c2);
            }
            Optimizer::De(c) => {
                for (n, v) in [("inertia", self.inertia), ("c1", self.c1), ("c2", self.c2), ("p_c", self.p_c), ("p_m", self.p_m), ("eta_c", self.eta_c), ("eta_m", self.eta_m)] {
                    if v.is_some() {
                        return misplaced(n);
                    }
                }
                c.population = self.population.unwrap_or(c.population);
                c.f = self.f.unwrap_or(c.f);
                c.cr = self.cr.unwrap_or(c.cr);
                if let Some(x) = &self.crossover {
                    c.crossover = x.parse()?;
                }
                if let Some(r) = &self.reference {
                    c.reference = r.parse()?;
                }
            }
            Optimizer::Rga(c) => {
                for (n, v) in [("inertia", self.inertia), ("c1", self.c1), ("c2", self.c2), ("f", self.f), ("cr", self.cr)] {
                    if v.is_some() {
                        return misplaced(n);
                    }
                }
                c.population = self.population.unwrap_or(c.population);
                c.p_c = self.p_c.unwrap_or(c.p_c);
                c.p_m = self.p_m.unwrap_or(c.p_m);
                c.eta_c = self.eta_c.unwrap_or(c.eta_c);
                c.eta_m = self.eta_m.unwrap_or(c.eta_m);
            }
        }
        debug_assert_eq!(kind, opt.kind());
        opt.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyEntry {
    pub repair: String,
    pub velocity: Option<String>,
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    pub optimizer: String,
    pub problems: Vec<String>,
    pub strategies: Vec<StrategyEntry>,
    pub dimension: Option<usize>,
    pub runs: Option<usize>,
    pub budget: Option<u64>,
    pub threshold: Option<f64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub overrides: OptimizerOverrides,
}

impl MatrixConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Usage(format!("invalid matrix config: {e}")))
    }

    /// One experiment per (strategy, problem), strategies outermost.
    pub fn experiments(&self) -> Result<Vec<ExperimentSpec>> {
        let kind: OptimizerKind = self.optimizer.parse()?;
        if self.problems.is_empty() || self.strategies.is_empty() {
            return usage("matrix config needs at least one problem and one strategy");
        }
        let mut out = Vec::new();
        for s in &self.strategies {
            let velocity = match &s.velocity {
                Some(v) => v.parse()?,
                None => VelocityPolicy::Recomputed,
            };
            let velocity = if kind == OptimizerKind::Pso { velocity } else { VelocityPolicy::Unchanged };
            let (mut repair, velocity) = parse_strategy(&s.repair, velocity)?;
            if let Some(a) = s.alpha {
                repair = repair.with_alpha(a)?;
            }
            let mut optimizer = Optimizer::with_defaults(kind, repair, velocity)?;
            self.overrides.apply(&mut optimizer)?;
            for p in &self.problems {
                let mut settings = recommended_settings(p);
                if let Some(b) = self.budget {
                    settings.budget = b;
                }
                if let Some(t) = self.threshold {
                    settings.success_threshold = t;
                }
                let spec = ExperimentSpec {
                    problem: p.clone(),
                    dimension: self.dimension.unwrap_or(DEFAULT_DIMENSION),
                    optimizer,
                    runs: self.runs.unwrap_or(50),
                    settings,
                    base_seed: self.seed.unwrap_or(1),
                };
                spec.validate()?;
                out.push(spec);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
optimizer = "pso"
problems = ["elp:boundary", "sch:center"]
runs = 5
budget = 1000

[[strategies]]
repair = "exp-c"
velocity = "recomputed"

[[strategies]]
repair = "hyperbolic"

[[strategies]]
repair = "ip-s"
alpha = 0.1

[overrides]
population = 30
"#;

    #[test]
    fn expands_the_grid() {
        let cfg = MatrixConfig::from_toml(SAMPLE).unwrap();
        let specs = cfg.experiments().unwrap();
        assert_eq!(specs.len(), 6);
        assert_eq!(specs[2].optimizer.velocity_policy(), VelocityPolicy::Hyperbolic);
        assert_eq!(specs[4].optimizer.repair().alpha, 0.1);
        match specs[0].optimizer {
            Optimizer::Pso(c) => assert_eq!(c.population, 30),
            _ => panic!("expected PSO"),
        }
        assert!(specs.iter().all(|s| s.runs == 5 && s.settings.budget == 1000));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(MatrixConfig::from_toml("optimizer = 3").is_err());
        let cfg = MatrixConfig::from_toml(&SAMPLE.replace("population = 30", "cr = 0.3")).unwrap();
        assert!(cfg.experiments().is_err());
        let cfg = MatrixConfig::from_toml(&SAMPLE.replace("\"pso\"", "\"tabu\"")).unwrap();
        assert!(cfg.experiments().is_err());
        assert!(MatrixConfig::from_toml(&format!("{SAMPLE}\nbogus = 1")).is_err());
    }
}
