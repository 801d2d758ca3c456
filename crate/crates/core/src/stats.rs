//! Multi-dataset comparison: average ranks, pairwise Wilcoxon signed-rank
//! tests, Holm correction, clique formation and critical-difference output.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Result, TsclError};

/// One metric's scores over datasets (rows) and algorithms (columns).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultsTable {
    pub dataset_names: Vec<String>,
    pub algorithm_names: Vec<String>,
    /// scores[dataset][algorithm], higher is better
    pub scores: Vec<Vec<f64>>,
}

impl ResultsTable {
    pub fn new(
        dataset_names: Vec<String>,
        algorithm_names: Vec<String>,
        scores: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if dataset_names.is_empty() || algorithm_names.is_empty() {
            return Err(TsclError::EmptyTable);
        }
        if scores.len() != dataset_names.len()
            || scores.iter().any(|r| r.len() != algorithm_names.len())
        {
            return Err(TsclError::MetricInput("ragged results table".into()));
        }
        Ok(Self {
            dataset_names,
            algorithm_names,
            scores,
        })
    }

    /// Scores of one algorithm across datasets.
    pub fn column(&self, a: usize) -> Vec<f64> {
        self.scores.iter().map(|r| r[a]).collect()
    }
}

/// Mid-ranks of a score row, rank 1 for the highest score.
fn rank_row(row: &[f64]) -> Vec<f64> {
    let a = row.len();
    let mut order: Vec<usize> = (0..a).collect();
    order.sort_by(|&i, &j| row[j].partial_cmp(&row[i]).unwrap());
    let mut ranks = vec![0.0; a];
    let mut pos = 0;
    while pos < a {
        let mut end = pos;
        while end + 1 < a && row[order[end + 1]] == row[order[pos]] {
            end += 1;
        }
        let mid = (pos + end) as f64 / 2.0 + 1.0;
        for &idx in &order[pos..=end] {
            ranks[idx] = mid;
        }
        pos = end + 1;
    }
    ranks
}

/// Per-algorithm mean rank over datasets (rank 1 = best, mid-ranks on ties).
pub fn average_ranks(table: &ResultsTable) -> Result<Vec<f64>> {
    if table.algorithm_names.len() < 2 {
        return Err(TsclError::MetricInput("need at least two algorithms".into()));
    }
    let a = table.algorithm_names.len();
    let d = table.dataset_names.len() as f64;
    let mut sums = vec![0.0; a];
    for row in &table.scores {
        for (s, r) in sums.iter_mut().zip(rank_row(row)) {
            *s += r;
        }
    }
    Ok(sums.into_iter().map(|s| s / d).collect())
}

/// Mid-ranks of absolute differences, doubled so they stay integral.
fn doubled_abs_ranks(diffs: &[f64]) -> Vec<u64> {
    let n = diffs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diffs[i].abs().partial_cmp(&diffs[j].abs()).unwrap());
    let mut ranks = vec![0u64; n];
    let mut pos = 0;
    while pos < n {
        let mut end = pos;
        while end + 1 < n && diffs[order[end + 1]].abs() == diffs[order[pos]].abs() {
            end += 1;
        }
        // doubled mid-rank of positions pos..=end (1-based ranks)
        let doubled = (pos + end) as u64 + 2;
        for &idx in &order[pos..=end] {
            ranks[idx] = doubled;
        }
        pos = end + 1;
    }
    ranks
}

/// Two-sided Wilcoxon signed-rank p-value for paired scores. Zero
/// differences are dropped; tied magnitudes take mid-ranks. Exact null
/// distribution up to n = 25, normal approximation with continuity
/// correction beyond.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(TsclError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let diffs: Vec<f64> = x
        .iter()
        .zip(y)
        .map(|(a, b)| a - b)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.is_empty() {
        return Err(TsclError::UndefinedTest);
    }
    let n = diffs.len();
    let doubled = doubled_abs_ranks(&diffs);
    let w_plus: u64 = diffs
        .iter()
        .zip(&doubled)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, &r)| r)
        .sum();
    let total: u64 = doubled.iter().sum();
    let w_minus = total - w_plus;
    let w = w_plus.min(w_minus);

    if n <= 25 {
        // subset-sum distribution over the doubled ranks
        let max_sum = total as usize;
        let mut counts = vec![0.0f64; max_sum + 1];
        counts[0] = 1.0;
        for &r in &doubled {
            for s in (r as usize..=max_sum).rev() {
                counts[s] += counts[s - r as usize];
            }
        }
        let tail: f64 = counts[..=(w as usize)].iter().sum();
        let p = 2.0 * tail / 2.0f64.powi(n as i32);
        Ok(p.min(1.0))
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        // tie correction over groups of equal magnitude
        let mut tie_term = 0.0;
        let mut sorted = doubled.clone();
        sorted.sort_unstable();
        let mut pos = 0;
        while pos < n {
            let mut end = pos;
            while end + 1 < n && sorted[end + 1] == sorted[pos] {
                end += 1;
            }
            let t = (end - pos + 1) as f64;
            tie_term += t * t * t - t;
            pos = end + 1;
        }
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
        let w_half = w as f64 / 2.0;
        let z = (w_half - mean + 0.5) / var.sqrt();
        let normal = Normal::new(0.0, 1.0).unwrap();
        Ok((2.0 * normal.cdf(z)).min(1.0))
    }
}

/// Holm step-down at level `alpha`: returns, per hypothesis, whether it
/// is rejected. `None` p-values (undefined tests) are never rejected.
pub fn holm_reject(pvalues: &[Option<f64>], alpha: f64) -> Vec<bool> {
    let m = pvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        let a = pvalues[i].unwrap_or(f64::INFINITY);
        let b = pvalues[j].unwrap_or(f64::INFINITY);
        a.partial_cmp(&b).unwrap()
    });
    let mut rejected = vec![false; m];
    for (step, &idx) in order.iter().enumerate() {
        match pvalues[idx] {
            Some(p) if p < alpha / (m - step) as f64 => rejected[idx] = true,
            _ => break,
        }
    }
    rejected
}

/// Rank ordering plus cliques of rank-adjacent algorithms with no
/// Holm-retained significant pair inside.
#[derive(Debug, Clone, Serialize)]
pub struct CliqueAnalysis {
    /// (algorithm name, mean rank), best rank first; ties ordered by name.
    pub ordered: Vec<(String, f64)>,
    /// Index runs into `ordered`, each of size >= 2.
    pub cliques: Vec<Vec<usize>>,
}

pub fn holm_cliques(table: &ResultsTable, alpha: f64) -> Result<CliqueAnalysis> {
    let a = table.algorithm_names.len();
    if a < 2 {
        return Err(TsclError::MetricInput("need at least two algorithms".into()));
    }
    let ranks = average_ranks(table)?;
    // canonical order: mean rank ascending, name breaks ties
    let mut order: Vec<usize> = (0..a).collect();
    order.sort_by(|&i, &j| {
        ranks[i]
            .partial_cmp(&ranks[j])
            .unwrap()
            .then_with(|| table.algorithm_names[i].cmp(&table.algorithm_names[j]))
    });
    let ordered: Vec<(String, f64)> = order
        .iter()
        .map(|&i| (table.algorithm_names[i].clone(), ranks[i]))
        .collect();

    // pairwise tests in the canonical order
    let mut pair_index = Vec::new();
    let mut pvalues = Vec::new();
    for i in 0..a {
        for j in i + 1..a {
            let x = table.column(order[i]);
            let y = table.column(order[j]);
            let p = match wilcoxon_signed_rank(&x, &y) {
                Ok(p) => Some(p),
                Err(TsclError::UndefinedTest) => None,
                Err(e) => return Err(e),
            };
            pair_index.push((i, j));
            pvalues.push(p);
        }
    }
    let rejected = holm_reject(&pvalues, alpha);
    let mut significant = vec![vec![false; a]; a];
    for (&(i, j), &r) in pair_index.iter().zip(&rejected) {
        significant[i][j] = r;
        significant[j][i] = r;
    }

    // maximal rank-adjacent runs free of significant pairs
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for start in 0..a {
        let mut end = start;
        while end + 1 < a && (start..=end).all(|i| !significant[i][end + 1]) {
            end += 1;
        }
        if end > start {
            let run: Vec<usize> = (start..=end).collect();
            if !cliques
                .iter()
                .any(|c| c.first().unwrap() <= &start && c.last().unwrap() >= &end)
            {
                cliques.push(run);
            }
        }
    }
    Ok(CliqueAnalysis { ordered, cliques })
}

/// Structured critical-difference summary alongside a deterministic text
/// rendering: algorithms ordered by mean rank (4 decimals) and clique
/// groupings.
#[derive(Debug, Clone, Serialize)]
pub struct CdSummary {
    pub algorithms: Vec<CdAlgorithm>,
    pub cliques: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CdAlgorithm {
    pub name: String,
    pub mean_rank: f64,
}

pub fn emit_cd_output(analysis: &CliqueAnalysis) -> (String, CdSummary) {
    let mut text = String::new();
    let width = analysis
        .ordered
        .iter()
        .map(|(n, _)| n.len())
        .max()
        .unwrap_or(0);
    for (pos, (name, rank)) in analysis.ordered.iter().enumerate() {
        text.push_str(&format!("{:>3}  {:<width$}  {:.4}\n", pos + 1, name, rank));
    }
    if analysis.cliques.is_empty() {
        text.push_str("cliques: none\n");
    } else {
        for (ci, clique) in analysis.cliques.iter().enumerate() {
            let names: Vec<&str> = clique
                .iter()
                .map(|&i| analysis.ordered[i].0.as_str())
                .collect();
            text.push_str(&format!("clique {}: {}\n", ci + 1, names.join(", ")));
        }
    }
    let summary = CdSummary {
        algorithms: analysis
            .ordered
            .iter()
            .map(|(name, rank)| CdAlgorithm {
                name: name.clone(),
                mean_rank: (rank * 10000.0).round() / 10000.0,
            })
            .collect(),
        cliques: analysis
            .cliques
            .iter()
            .map(|c| c.iter().map(|&i| analysis.ordered[i].0.clone()).collect())
            .collect(),
    };
    (text, summary)
}
