//! Collation of results files into per-metric dataset x algorithm tables.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use tscl_core::stats::ResultsTable;

use crate::results::EvalReport;
use crate::{CliError, Result};

pub const METRICS: [&str; 7] = ["clacc", "ri", "ari", "mi", "nmi", "ami", "db"];

fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> Result<()> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    for entry in entries {
        let entry = entry.map_err(|e| CliError::Io {
            path: dir.to_path_buf(),
            source: e,
        })?;
        let path = entry.path();
        if path.is_dir() {
            walk(&path, out)?;
        } else if path.extension().is_some_and(|e| e == "csv") {
            out.push(path);
        }
    }
    Ok(())
}

/// Read every `.csv` under the given directories (recursively) as a
/// results file. Unparsable files are an error, not a silent skip.
pub fn collect_reports(dirs: &[PathBuf]) -> Result<Vec<EvalReport>> {
    let mut files = Vec::new();
    for dir in dirs {
        if dir.is_file() {
            files.push(dir.clone());
        } else {
            walk(dir, &mut files)?;
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(CliError::Invalid("no results files found".into()));
    }
    files.iter().map(EvalReport::read).collect()
}

/// One table per metric for the chosen split. Scores are averaged over
/// resamples; datasets missing any algorithm are dropped with a warning
/// on stderr.
pub fn collate(reports: &[EvalReport], split: &str) -> Result<BTreeMap<String, ResultsTable>> {
    let reports: Vec<&EvalReport> = reports.iter().filter(|r| r.split == split).collect();
    if reports.is_empty() {
        return Err(CliError::Invalid(format!("no results for split {split:?}")));
    }
    let datasets: BTreeSet<String> = reports.iter().map(|r| r.dataset.clone()).collect();
    let algorithms: BTreeSet<String> = reports.iter().map(|r| r.algorithm()).collect();

    // (dataset, algorithm) -> runs
    let mut cells: BTreeMap<(String, String), Vec<&EvalReport>> = BTreeMap::new();
    for r in &reports {
        cells
            .entry((r.dataset.clone(), r.algorithm()))
            .or_default()
            .push(r);
    }
    let complete: Vec<&String> = datasets
        .iter()
        .filter(|d| {
            let ok = algorithms
                .iter()
                .all(|a| cells.contains_key(&((*d).clone(), a.clone())));
            if !ok {
                eprintln!("warning: dropping dataset {d}: results incomplete");
            }
            ok
        })
        .collect();
    if complete.is_empty() {
        return Err(CliError::Invalid(
            "no dataset has results for every algorithm".into(),
        ));
    }

    let mut tables = BTreeMap::new();
    for metric in METRICS {
        let scores: Vec<Vec<f64>> = complete
            .iter()
            .map(|d| {
                algorithms
                    .iter()
                    .map(|a| {
                        let runs = &cells[&((*d).clone(), a.clone())];
                        runs.iter()
                            .map(|r| r.metric_value(metric).unwrap())
                            .sum::<f64>()
                            / runs.len() as f64
                    })
                    .collect()
            })
            .collect();
        tables.insert(
            metric.to_string(),
            ResultsTable::new(
                complete.iter().map(|d| (*d).clone()).collect(),
                algorithms.iter().cloned().collect(),
                scores,
            )?,
        );
    }
    Ok(tables)
}
