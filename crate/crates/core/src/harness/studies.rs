//! FE-ratio comparison, scale-up study and α sweep.

use super::{run_experiment, ExperimentSpec, ExperimentStatistics};
use crate::benchmarks::FunctionId;
use crate::error::{usage, Result};
use crate::optimizers::{DeConfig, Optimizer, RunSettings};
use crate::repair::{RepairKind, RepairStrategy};

#[derive(Debug, Clone, PartialEq)]
pub struct FeRatioEntry {
    pub strategy: String,
    /// Problems solved in more than 45 of 50 runs.
    pub rho: usize,
    /// Mean over solved problems of the strategy's FEs relative to the
    /// average of all strategies that solved the problem.
    pub fe_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeRatioReport {
    pub entries: Vec<FeRatioEntry>,
    pub notes: Vec<String>,
}

impl FeRatioReport {
    pub fn get(&self, strategy: &str) -> Option<&FeRatioEntry> {
        self.entries.iter().find(|e| e.strategy == strategy)
    }
}

/// FE-ratio of every strategy in `results`, which holds one row per
/// (strategy, problem) pair. Strategies are keyed by
/// [`ExperimentStatistics::strategy_key`], problems by id and placement.
pub fn fe_ratio(results: &[ExperimentStatistics]) -> Result<FeRatioReport> {
    if results.is_empty() {
        return usage("FE-ratio needs at least one result");
    }
    let mut strategies: Vec<String> = Vec::new();
    let mut problems: Vec<(String, String)> = Vec::new();
    for r in results {
        let k = r.strategy_key();
        if !strategies.contains(&k) {
            strategies.push(k);
        }
        let p = (r.problem.clone(), r.placement.clone());
        if !problems.contains(&p) {
            problems.push(p);
        }
    }
    let solved_fe = |s: &str, p: &(String, String)| -> Option<f64> {
        results
            .iter()
            .find(|r| r.strategy_key() == s && r.problem == p.0 && r.placement == p.1)
            .filter(|r| r.solved())
            .and_then(|r| r.fe_mean)
    };
    let averages: Vec<Option<f64>> = problems
        .iter()
        .map(|p| {
            let fes: Vec<f64> = strategies.iter().filter_map(|s| solved_fe(s, p)).collect();
            (!fes.is_empty()).then(|| fes.iter().sum::<f64>() / fes.len() as f64)
        })
        .collect();
    let mut report = FeRatioReport::default();
    for s in &strategies {
        let ratios: Vec<f64> = problems
            .iter()
            .zip(&averages)
            .filter_map(|(p, avg)| Some(solved_fe(s, p)? / (*avg)?))
            .collect();
        let rho = ratios.len();
        if rho == 0 {
            report.notes.push(format!("{s} solved no problem and has no FE-ratio"));
        }
        report.entries.push(FeRatioEntry {
            strategy: s.clone(),
            rho,
            fe_ratio: (rho > 0).then(|| ratios.iter().sum::<f64>() / rho as f64),
        });
    }
    Ok(report)
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// points.
pub fn fit_log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Settings of the dimension scale-up study.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleUpSpec {
    pub functions: Vec<FunctionId>,
    pub sizes: Vec<usize>,
    pub runs: usize,
    pub base_seed: u64,
    /// The budget of a size-`n` run is `budget_per_variable * n`.
    pub budget_per_variable: u64,
    pub de: DeConfig,
}

impl Default for ScaleUpSpec {
    fn default() -> Self {
        Self {
            functions: FunctionId::ALL.to_vec(),
            sizes: vec![20, 50, 100, 200, 300, 500],
            runs: 20,
            base_seed: 1,
            budget_per_variable: 50_000,
            de: DeConfig { f: 0.8, cr: 0.9, repair: RepairStrategy::new(RepairKind::IpSpread), ..DeConfig::default() },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaleUpRow {
    pub function: FunctionId,
    pub n: usize,
    pub stats: ExperimentStatistics,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaleUpReport {
    pub rows: Vec<ScaleUpRow>,
    pub slopes: Vec<(FunctionId, Option<f64>)>,
    pub notes: Vec<String>,
}

impl ScaleUpReport {
    pub fn slope(&self, f: FunctionId) -> Option<f64> {
        self.slopes.iter().find(|(g, _)| *g == f).and_then(|(_, s)| *s)
    }
}

/// Median FEs per function and size, with the log-log growth slope fitted
/// over the sizes that had successful runs.
pub fn scale_up_study(spec: &ScaleUpSpec) -> Result<ScaleUpReport> {
    if spec.functions.is_empty() || spec.sizes.is_empty() {
        return usage("scale-up needs at least one function and one size");
    }
    let mut rows = Vec::new();
    let mut slopes = Vec::new();
    let mut notes = Vec::new();
    for &function in &spec.functions {
        let mut points = Vec::new();
        for &n in &spec.sizes {
            let exp = ExperimentSpec {
                problem: format!("{}:center", function.name()),
                dimension: n,
                optimizer: Optimizer::De(spec.de),
                runs: spec.runs,
                settings: RunSettings::new(spec.budget_per_variable.saturating_mul(n as u64), 1e-10),
                base_seed: spec.base_seed,
            };
            let stats = run_experiment(&exp)?;
            match stats.fe_median {
                Some(m) => points.push((n as f64, m as f64)),
                None => notes.push(format!("{} n={n}: no successful run", function.name())),
            }
            if stats.success_count < stats.runs && stats.success_count > 0 {
                notes.push(format!("{} n={n}: {}/{} runs succeeded", function.name(), stats.success_count, stats.runs));
            }
            rows.push(ScaleUpRow { function, n, stats });
        }
        slopes.push((function, fit_log_log_slope(&points)));
    }
    Ok(ScaleUpReport { rows, slopes, notes })
}

/// Runs `base` once per inverse-parabolic width in `alphas`.
pub fn alpha_sweep(base: &ExperimentSpec, alphas: &[f64]) -> Result<Vec<(f64, ExperimentStatistics)>> {
    if !base.optimizer.repair().kind.is_inverse_parabolic() {
        return usage("the alpha sweep needs an inverse-parabolic repair (ip-c or ip-s)");
    }
    if alphas.is_empty() {
        return usage("the alpha sweep needs at least one alpha");
    }
    alphas
        .iter()
        .map(|&a| {
            let mut spec = base.clone();
            let repair = spec.optimizer.repair().with_alpha(a)?;
            spec.optimizer.set_repair(repair);
            Ok((a, run_experiment(&spec)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizers::OptimizerKind;
    use crate::repair::VelocityPolicy;
    use approx::assert_abs_diff_eq;

    fn stat(strategy: &str, problem: &str, success: usize, fe: f64) -> ExperimentStatistics {
        ExperimentStatistics {
            strategy: strategy.into(),
            velocity_policy: String::new(),
            problem: problem.into(),
            placement: "center".into(),
            runs: 50,
            success_count: success,
            fe_best: Some(fe as u64),
            fe_median: Some(fe as u64),
            fe_worst: Some(fe as u64),
            fe_mean: Some(fe),
            fitness_best: 0.0,
            fitness_median: 0.0,
            fitness_worst: 0.0,
        }
    }

    #[test]
    fn single_strategy_ratio_is_one() {
        let r = fe_ratio(&[stat("a", "p", 50, 100.0), stat("a", "q", 50, 7000.0)]).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].rho, 2);
        assert_eq!(r.entries[0].fe_ratio, Some(1.0));
    }

    #[test]
    fn identical_strategies_tie() {
        let r = fe_ratio(&[stat("a", "p", 50, 100.0), stat("b", "p", 50, 100.0)]).unwrap();
        assert_eq!(r.get("a").unwrap().fe_ratio, Some(1.0));
        assert_eq!(r.get("b").unwrap().fe_ratio, Some(1.0));
    }

    #[test]
    fn ratio_against_the_mean() {
        let r = fe_ratio(&[stat("a", "p", 50, 100.0), stat("b", "p", 50, 300.0)]).unwrap();
        assert_abs_diff_eq!(r.get("a").unwrap().fe_ratio.unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.get("b").unwrap().fe_ratio.unwrap(), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn unsolved_problems_are_skipped() {
        let r = fe_ratio(&[
            stat("a", "p", 50, 100.0),
            stat("b", "p", 45, 10.0),
            stat("b", "q", 46, 10.0),
        ])
        .unwrap();
        assert_eq!(r.get("a").unwrap().rho, 1);
        assert_eq!(r.get("a").unwrap().fe_ratio, Some(1.0));
        assert_eq!(r.get("b").unwrap().rho, 1);
        let r = fe_ratio(&[stat("a", "p", 50, 100.0), stat("z", "p", 0, 0.0)]).unwrap();
        assert_eq!(r.get("z").unwrap().fe_ratio, None);
        assert_eq!(r.notes.len(), 1);
        assert!(fe_ratio(&[]).is_err());
    }

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = [20.0, 50.0, 100.0].iter().map(|&n: &f64| (n, 3.0 * n.powf(1.5))).collect();
        assert_abs_diff_eq!(fit_log_log_slope(&pts).unwrap(), 1.5, epsilon = 1e-12);
        assert_eq!(fit_log_log_slope(&pts[..1]), None);
    }

    #[test]
    fn sweep_needs_ip_and_degenerates_to_one_experiment() {
        let opt = Optimizer::with_defaults(OptimizerKind::De, RepairStrategy::new(RepairKind::Random), VelocityPolicy::Unchanged).unwrap();
        let mut spec = ExperimentSpec::new("elp:boundary", opt);
        assert!(alpha_sweep(&spec, &[1.0]).is_err());
        spec.optimizer.set_repair(RepairStrategy::new(RepairKind::IpSpread));
        spec.dimension = 4;
        spec.runs = 3;
        spec.settings.budget = 1_000;
        let sweep = alpha_sweep(&spec, &[0.5]).unwrap();
        spec.optimizer.set_repair(RepairStrategy::new(RepairKind::IpSpread).with_alpha(0.5).unwrap());
        assert_eq!(sweep, vec![(0.5, run_experiment(&spec).unwrap())]);
    }
}
