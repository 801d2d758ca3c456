//! The results-file format: a small self-describing CSV.
//!
//! Line 1: `dataset,clusterer,split,resample,seed`
//! Line 2: canonical distance parameter string
//! Line 3: `clacc,ri,ari,mi,nmi,ami,db,fit_ms,predict_ms`
//! Lines 4+: `true_label,assigned_cluster`, one per case
//!
//! UTF-8, LF line endings, reals at 6 significant digits.

use std::fs;
use std::path::Path;

use crate::{CliError, Result};

/// Per-run metric vector plus the per-case rows it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub dataset: String,
    pub clusterer: String,
    pub split: String,
    pub resample: u64,
    pub seed: u64,
    /// Canonical parameter string of the distance spec.
    pub params: String,
    pub clacc: f64,
    pub ri: f64,
    pub ari: f64,
    pub mi: f64,
    pub nmi: f64,
    pub ami: f64,
    pub db: f64,
    pub fit_ms: f64,
    pub predict_ms: f64,
    /// (true label, assigned cluster) per case.
    pub rows: Vec<(String, usize)>,
}

/// Render a real to 6 significant digits, deterministically.
pub fn fmt_sig6(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0.00000".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (5 - exp).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

impl EvalReport {
    /// Measure name parsed out of the canonical parameter string.
    pub fn metric_name(&self) -> Option<&str> {
        self.params
            .split(',')
            .find_map(|kv| kv.strip_prefix("metric="))
    }

    /// Collation key: clusterer plus measure, e.g. `kmedoids-msm`.
    pub fn algorithm(&self) -> String {
        format!(
            "{}-{}",
            self.clusterer,
            self.metric_name().unwrap_or("unknown")
        )
    }

    pub fn metric_value(&self, metric: &str) -> Option<f64> {
        match metric {
            "clacc" => Some(self.clacc),
            "ri" => Some(self.ri),
            "ari" => Some(self.ari),
            "mi" => Some(self.mi),
            "nmi" => Some(self.nmi),
            "ami" => Some(self.ami),
            "db" => Some(self.db),
            _ => None,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            self.dataset, self.clusterer, self.split, self.resample, self.seed
        ));
        out.push_str(&self.params);
        out.push('\n');
        let metrics = [
            self.clacc,
            self.ri,
            self.ari,
            self.mi,
            self.nmi,
            self.ami,
            self.db,
            self.fit_ms,
            self.predict_ms,
        ];
        let line: Vec<String> = metrics.iter().map(|&m| fmt_sig6(m)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
        for (label, cluster) in &self.rows {
            out.push_str(&format!("{label},{cluster}\n"));
        }
        out
    }

    pub fn write(&self, path: impl AsRef<Path>, overwrite: bool) -> Result<()> {
        let path = path.as_ref();
        if path.exists() && !overwrite {
            return Err(CliError::OverwriteRefused(path.to_path_buf()));
        }
        fs::write(path, self.to_csv()).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })
    }

    pub fn from_csv(path: &Path, text: &str) -> Result<Self> {
        let err = |message: String| CliError::Results {
            path: path.to_path_buf(),
            message,
        };
        let mut lines = text.lines();
        let head: Vec<&str> = lines
            .next()
            .ok_or_else(|| err("empty file".into()))?
            .split(',')
            .collect();
        if head.len() != 5 {
            return Err(err(format!("expected 5 header fields, got {}", head.len())));
        }
        let params = lines
            .next()
            .ok_or_else(|| err("missing parameter line".into()))?
            .to_string();
        let metric_line = lines.next().ok_or_else(|| err("missing metric line".into()))?;
        let metrics: Vec<f64> = metric_line
            .split(',')
            .map(|t| t.parse::<f64>().map_err(|_| err(format!("bad metric value {t:?}"))))
            .collect::<Result<_>>()?;
        if metrics.len() != 9 {
            return Err(err(format!("expected 9 metric fields, got {}", metrics.len())));
        }
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let (label, cluster) = line
                .rsplit_once(',')
                .ok_or_else(|| err(format!("bad case row {line:?}")))?;
            let cluster: usize = cluster
                .parse()
                .map_err(|_| err(format!("bad cluster id {cluster:?}")))?;
            rows.push((label.to_string(), cluster));
        }
        Ok(EvalReport {
            dataset: head[0].to_string(),
            clusterer: head[1].to_string(),
            split: head[2].to_string(),
            resample: head[3]
                .parse()
                .map_err(|_| err(format!("bad resample id {:?}", head[3])))?,
            seed: head[4]
                .parse()
                .map_err(|_| err(format!("bad seed {:?}", head[4])))?,
            params,
            clacc: metrics[0],
            ri: metrics[1],
            ari: metrics[2],
            mi: metrics[3],
            nmi: metrics[4],
            ami: metrics[5],
            db: metrics[6],
            fit_ms: metrics[7],
            predict_ms: metrics[8],
            rows,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        Self::from_csv(path, &text)
    }
}
