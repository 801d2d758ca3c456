//! Experiment orchestration: fit on the train split, evaluate on train
//! and (optionally) test, and write deterministic results files.

use std::path::{Path, PathBuf};
use std::time::Instant;

use tscl_core::clustering::{self, ClusteringConfig};
use tscl_core::{metrics, z_normalize, Dataset};

use crate::results::EvalReport;
use crate::ucr::load_ucr_dataset;
use crate::{CliError, Result};

/// One train(/test) clustering run.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub train: PathBuf,
    pub test: Option<PathBuf>,
    /// `clustering.k == 0` means "number of distinct train labels".
    pub clustering: ClusteringConfig,
    pub normalize: bool,
    pub resample: u64,
    pub base_seed: u64,
    pub out_dir: PathBuf,
    pub overwrite: bool,
    /// Record wall-clock timings in the results files. Off by default so
    /// identical runs produce byte-identical files.
    pub record_timings: bool,
}

fn evaluate(
    data: &Dataset,
    assignments: &[usize],
    k: usize,
    split: &str,
    spec: &ExperimentSpec,
    seed: u64,
    (fit_ms, predict_ms): (f64, f64),
) -> Result<EvalReport> {
    let labels = data
        .labels()
        .ok_or_else(|| CliError::Invalid(format!("dataset {} has no labels", data.name)))?;
    let db = metrics::davies_bouldin(data.series(), assignments, k).unwrap_or(f64::NAN);
    let rows: Vec<(String, usize)> = labels
        .iter()
        .cloned()
        .zip(assignments.iter().copied())
        .collect();
    Ok(EvalReport {
        dataset: data.name.clone(),
        clusterer: match spec.clustering.clusterer {
            clustering::ClustererKind::KMeans => "kmeans".into(),
            clustering::ClustererKind::KMedoids => "kmedoids".into(),
        },
        split: split.to_string(),
        resample: spec.resample,
        seed,
        params: spec.clustering.distance.canonical_string(),
        clacc: metrics::clustering_accuracy(labels, assignments)?,
        ri: metrics::rand_index(labels, assignments)?,
        ari: metrics::adjusted_rand_index(labels, assignments)?,
        mi: metrics::mutual_information(labels, assignments)?,
        nmi: metrics::normalized_mutual_information(labels, assignments)?,
        ami: metrics::adjusted_mutual_information(labels, assignments)?,
        db,
        fit_ms: if spec.record_timings { fit_ms } else { 0.0 },
        predict_ms: if spec.record_timings { predict_ms } else { 0.0 },
        rows,
    })
}

fn result_path(spec: &ExperimentSpec, report: &EvalReport) -> PathBuf {
    spec.out_dir.join(format!(
        "{}_{}_{}_resample{}.csv",
        report.dataset,
        report.algorithm(),
        report.split,
        report.resample
    ))
}

fn prepare(path: &Path, normalize: bool) -> Result<Dataset> {
    let data = load_ucr_dataset(path)?;
    if normalize {
        Ok(data.map_series(|s| Ok(z_normalize(s)))?)
    } else {
        Ok(data)
    }
}

/// Run one experiment and write one results file per evaluated split.
/// Returns the train report and, when a test split was given, the test
/// report. Refuses to overwrite existing files unless allowed.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<(EvalReport, Option<EvalReport>)> {
    let train = prepare(&spec.train, spec.normalize)?;
    let test = spec
        .test
        .as_ref()
        .map(|p| prepare(p, spec.normalize))
        .transpose()?;

    let mut config = spec.clustering.clone();
    if config.k == 0 {
        config.k = train.num_classes().ok_or_else(|| {
            CliError::Invalid(format!(
                "dataset {} has no labels, pass an explicit k",
                train.name
            ))
        })?;
    }
    config.seed = spec.base_seed + spec.resample;

    let t0 = Instant::now();
    let model = clustering::fit(&train, &config)?;
    let fit_ms = t0.elapsed().as_secs_f64() * 1000.0;

    let train_report = evaluate(
        &train,
        &model.assignments,
        config.k,
        "train",
        spec,
        config.seed,
        (fit_ms, 0.0),
    )?;

    let test_report = match &test {
        None => None,
        Some(test) => {
            let t0 = Instant::now();
            let pred = clustering::predict(&model, test)?;
            let predict_ms = t0.elapsed().as_secs_f64() * 1000.0;
            Some(evaluate(
                test,
                &pred,
                config.k,
                "test",
                spec,
                config.seed,
                (fit_ms, predict_ms),
            )?)
        }
    };

    std::fs::create_dir_all(&spec.out_dir).map_err(|e| CliError::Io {
        path: spec.out_dir.clone(),
        source: e,
    })?;
    // check both targets before writing either, so a refusal never leaves
    // a half-written experiment behind
    let mut targets = vec![(result_path(spec, &train_report), &train_report)];
    if let Some(r) = &test_report {
        targets.push((result_path(spec, r), r));
    }
    if !spec.overwrite {
        for (path, _) in &targets {
            if path.exists() {
                return Err(CliError::OverwriteRefused(path.clone()));
            }
        }
    }
    for (path, report) in &targets {
        report.write(path, spec.overwrite)?;
    }
    Ok((train_report, test_report))
}
