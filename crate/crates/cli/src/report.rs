use std::fmt::Write as _;
use std::str::FromStr;

use persiansort::AlgorithmKind;

use crate::config::{ConfigError, Experiment, Metric};
use crate::experiment::ReportRow;

pub const CSV_HEADER: &str = "experiment,algorithm,n,param,metric,mean,trials,rel_err,ratio_vs_m2";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(ConfigError(format!("unknown report format `{s}`"))),
        }
    }
}

/// Renders `rows`. Floats use the shortest round-trip form in CSV, so a
/// repeated count-metric run is byte-identical.
pub fn emit_report(rows: &[ReportRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => csv(rows),
        ReportFormat::Markdown => markdown(rows),
    }
}

fn csv(rows: &[ReportRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let ratio = r.ratio_vs_m2.map(|x| x.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.experiment, r.algorithm, r.n, r.param, r.metric, r.mean, r.trials, r.rel_err, ratio
        )
        .unwrap();
    }
    out
}

/// One table per experiment and metric: a row per `(n, param)`, a column
/// per algorithm. Cells hold the mean and, in parentheses, the ratio to M2.
/// A trailing `*` marks a row that hit the trial cap.
fn markdown(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    let mut groups: Vec<(Experiment, Metric)> = Vec::new();
    for r in rows {
        if !groups.contains(&(r.experiment, r.metric)) {
            groups.push((r.experiment, r.metric));
        }
    }
    for (experiment, metric) in groups {
        let group: Vec<&ReportRow> = rows.iter().filter(|r| r.experiment == experiment && r.metric == metric).collect();
        let algos: Vec<AlgorithmKind> =
            AlgorithmKind::ALL.into_iter().filter(|k| group.iter().any(|r| r.algorithm == *k)).collect();
        let mut points: Vec<(usize, &str)> = Vec::new();
        for r in &group {
            if !points.contains(&(r.n, r.param.as_str())) {
                points.push((r.n, r.param.as_str()));
            }
        }

        if !out.is_empty() {
            out.push('\n');
        }
        writeln!(out, "### {experiment} ({metric})\n").unwrap();
        let mut header = format!("| n | {} |", experiment.param_name());
        let mut rule = String::from("|---:|---:|");
        for a in &algos {
            write!(header, " {} |", a.label()).unwrap();
            rule.push_str("---:|");
        }
        writeln!(out, "{header}\n{rule}").unwrap();
        for (n, param) in points {
            let shown = param.split_once('=').map_or(param, |(_, v)| v);
            write!(out, "| {n} | {shown} |").unwrap();
            for a in &algos {
                match group.iter().find(|r| r.n == n && r.param == param && r.algorithm == *a) {
                    Some(r) => {
                        let mean = if metric.is_count() { format!("{:.1}", r.mean) } else { format!("{:.6}", r.mean) };
                        let ratio = r.ratio_vs_m2.map(|x| format!(" ({x:.3})")).unwrap_or_default();
                        let flag = if r.flagged { "*" } else { "" };
                        write!(out, " {mean}{ratio}{flag} |").unwrap();
                    }
                    None => out.push_str(" - |"),
                }
            }
            out.push('\n');
        }
    }
    out
}
