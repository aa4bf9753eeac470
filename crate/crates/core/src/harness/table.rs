//! CSV and Markdown rendering of experiment results.

use std::fmt::Write as _;
use std::str::FromStr;

use super::studies::{FeRatioReport, ScaleUpReport};
use super::ExperimentStatistics;
use crate::error::{usage, Error, Result};
use crate::optimizers::RunResult;

pub const CSV_HEADER: [&str; 14] = [
    "strategy",
    "velocity_policy",
    "problem",
    "placement",
    "success_count",
    "fe_best",
    "fe_median",
    "fe_worst",
    "fit_best",
    "fit_median",
    "fit_worst",
    "dnc_flag",
    "runs",
    "fe_mean",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => usage(format!("unknown table format `{other}`")),
        }
    }
}

/// Shortest representation that parses back to the same value.
fn real(v: f64) -> String {
    format!("{v:e}")
}

fn opt_u64(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn stats_fields(s: &ExperimentStatistics) -> Vec<String> {
    vec![
        s.strategy.clone(),
        s.velocity_policy.clone(),
        s.problem.clone(),
        s.placement.clone(),
        s.success_count.to_string(),
        opt_u64(s.fe_best),
        opt_u64(s.fe_median),
        opt_u64(s.fe_worst),
        real(s.fitness_best),
        real(s.fitness_median),
        real(s.fitness_worst),
        u8::from(s.is_dnc()).to_string(),
        s.runs.to_string(),
        s.fe_mean.map(real).unwrap_or_default(),
    ]
}

fn write_csv<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn fe_cell(v: Option<u64>) -> String {
    v.map(group_thousands).unwrap_or_default()
}

fn group_thousands(v: u64) -> String {
    let digits = v.to_string();
    let mut out = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(c);
    }
    out
}

pub fn emit_table(stats: &[ExperimentStatistics], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Csv => write_csv(&CSV_HEADER, stats.iter().map(stats_fields)),
        TableFormat::Markdown => {
            let mut out = String::from("| strategy | velocity | problem | placement | best | median | worst |\n");
            out.push_str("|---|---|---|---|---|---|---|\n");
            for s in stats {
                let (b, m, w) = if s.is_dnc() {
                    (
                        format!("*{:.2e}* (DNC)", s.fitness_best),
                        format!("*{:.2e}*", s.fitness_median),
                        format!("*{:.2e}*", s.fitness_worst),
                    )
                } else if s.success_count < s.runs {
                    (format!("{} ({})", fe_cell(s.fe_best), s.success_count), fe_cell(s.fe_median), fe_cell(s.fe_worst))
                } else {
                    (fe_cell(s.fe_best), fe_cell(s.fe_median), fe_cell(s.fe_worst))
                };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {b} | {m} | {w} |",
                    s.strategy, s.velocity_policy, s.problem, s.placement
                );
            }
            Ok(out)
        }
    }
}

fn parse_field<T: FromStr>(rec: &csv::StringRecord, i: usize) -> Result<T> {
    let raw = rec.get(i).ok_or_else(|| Error::Usage(format!("missing column {}", CSV_HEADER[i])))?;
    raw.parse().map_err(|_| Error::Usage(format!("bad value `{raw}` in column {}", CSV_HEADER[i])))
}

fn parse_opt<T: FromStr>(rec: &csv::StringRecord, i: usize) -> Result<Option<T>> {
    match rec.get(i) {
        Some("") => Ok(None),
        _ => parse_field(rec, i).map(Some),
    }
}

/// Reads a CSV produced by [`emit_table`].
pub fn parse_table(text: &str) -> Result<Vec<ExperimentStatistics>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return usage("unexpected results table header");
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let s = ExperimentStatistics {
            strategy: parse_field(&rec, 0)?,
            velocity_policy: parse_field(&rec, 1)?,
            problem: parse_field(&rec, 2)?,
            placement: parse_field(&rec, 3)?,
            success_count: parse_field(&rec, 4)?,
            fe_best: parse_opt(&rec, 5)?,
            fe_median: parse_opt(&rec, 6)?,
            fe_worst: parse_opt(&rec, 7)?,
            fitness_best: parse_field(&rec, 8)?,
            fitness_median: parse_field(&rec, 9)?,
            fitness_worst: parse_field(&rec, 10)?,
            runs: parse_field(&rec, 12)?,
            fe_mean: parse_opt(&rec, 13)?,
        };
        let dnc: u8 = parse_field(&rec, 11)?;
        if (dnc == 1) != s.is_dnc() {
            return usage("dnc_flag disagrees with success_count");
        }
        out.push(s);
    }
    Ok(out)
}

/// One row per improvement of the best-so-far fitness.
pub fn emit_trace(result: &RunResult) -> Result<String> {
    let rows = result.trace.iter().flatten().map(|(e, f)| vec![e.to_string(), real(*f)]);
    write_csv(&["evaluations", "best_fitness"], rows)
}

pub fn emit_fe_ratio(report: &FeRatioReport) -> Result<String> {
    let rows = report
        .entries
        .iter()
        .map(|e| vec![e.strategy.clone(), e.rho.to_string(), e.fe_ratio.map(real).unwrap_or_default()]);
    write_csv(&["strategy", "rho", "fe_ratio"], rows)
}

pub fn emit_scale_up(report: &ScaleUpReport) -> Result<String> {
    let rows = report.rows.iter().map(|r| {
        vec![
            r.function.name().to_string(),
            r.n.to_string(),
            r.stats.runs.to_string(),
            r.stats.success_count.to_string(),
            opt_u64(r.stats.fe_best),
            opt_u64(r.stats.fe_median),
            opt_u64(r.stats.fe_worst),
            report.slope(r.function).map(real).unwrap_or_default(),
        ]
    });
    write_csv(&["function", "n", "runs", "success_count", "fe_best", "fe_median", "fe_worst", "slope"], rows)
}

pub fn emit_alpha_sweep(rows: &[(f64, ExperimentStatistics)]) -> Result<String> {
    let mut header = vec!["alpha"];
    header.extend(CSV_HEADER);
    write_csv(
        &header,
        rows.iter().map(|(a, s)| {
            let mut f = vec![real(*a)];
            f.extend(stats_fields(s));
            f
        }),
    )
}
