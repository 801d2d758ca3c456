//! Clustering evaluation: supervised agreement metrics built on the
//! contingency table (CL-ACC via optimal assignment, RI, ARI and the
//! mutual-information family) plus the unsupervised Davies-Bouldin index.

use std::collections::HashMap;
use std::hash::Hash;

use crate::averaging::mean_average;
use crate::error::{Result, TsclError};
use crate::series::TimeSeries;

/// Cross-tabulation of predicted clusters against true classes.
#[derive(Debug, Clone)]
pub struct ContingencyTable {
    /// counts[pred][true]
    pub counts: Vec<Vec<usize>>,
    pub row_marginals: Vec<usize>,
    pub col_marginals: Vec<usize>,
    pub n: usize,
}

fn encode<L: Eq + Hash>(labels: &[L]) -> (Vec<usize>, usize) {
    let mut map = HashMap::new();
    let mut out = Vec::with_capacity(labels.len());
    for l in labels {
        let next = map.len();
        let id = *map.entry(l).or_insert(next);
        out.push(id);
    }
    (out, map.len())
}

impl ContingencyTable {
    pub fn from_labels<A: Eq + Hash, B: Eq + Hash>(y_true: &[A], y_pred: &[B]) -> Result<Self> {
        if y_true.len() != y_pred.len() {
            return Err(TsclError::LengthMismatch {
                left: y_true.len(),
                right: y_pred.len(),
            });
        }
        if y_true.is_empty() {
            return Err(TsclError::MetricInput("empty label vectors".into()));
        }
        let (t, kt) = encode(y_true);
        let (p, kp) = encode(y_pred);
        let mut counts = vec![vec![0usize; kt]; kp];
        for (&ti, &pi) in t.iter().zip(&p) {
            counts[pi][ti] += 1;
        }
        let row_marginals: Vec<usize> = counts.iter().map(|r| r.iter().sum()).collect();
        let col_marginals: Vec<usize> = (0..kt).map(|j| counts.iter().map(|r| r[j]).sum()).collect();
        Ok(Self {
            counts,
            row_marginals,
            col_marginals,
            n: y_true.len(),
        })
    }
}

/// Minimum-cost assignment of rows to columns for a square cost matrix.
/// Returns, per row, the assigned column.
fn hungarian_min(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    // potentials method, 1-indexed internally
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1]; // p[j] = row matched to column j
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] != 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Clustering accuracy: best one-to-one cluster-to-class assignment found
/// on the contingency table (each count subtracted from the maximum to
/// form a cost matrix), matched count over n. Surplus clusters left
/// without a class contribute nothing.
pub fn clustering_accuracy<A: Eq + Hash, B: Eq + Hash>(y_true: &[A], y_pred: &[B]) -> Result<f64> {
    let table = ContingencyTable::from_labels(y_true, y_pred)?;
    let kp = table.counts.len();
    let kt = table.counts[0].len();
    let dim = kp.max(kt);
    let max_count = table
        .counts
        .iter()
        .flat_map(|r| r.iter())
        .copied()
        .max()
        .unwrap_or(0) as f64;
    // pad to square; padding cells carry the "no match" cost
    let cost: Vec<Vec<f64>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i < kp && j < kt {
                        max_count - table.counts[i][j] as f64
                    } else {
                        max_count
                    }
                })
                .collect()
        })
        .collect();
    let assignment = hungarian_min(&cost);
    let matched: usize = assignment
        .iter()
        .enumerate()
        .filter(|&(i, &j)| i < kp && j < kt)
        .map(|(i, &j)| table.counts[i][j])
        .sum();
    Ok(matched as f64 / table.n as f64)
}

fn pairs(c: usize) -> f64 {
    (c * c.saturating_sub(1)) as f64 / 2.0
}

/// Rand index: agreeing pairs over all pairs.
pub fn rand_index<A: Eq + Hash, B: Eq + Hash>(y_true: &[A], y_pred: &[B]) -> Result<f64> {
    let table = ContingencyTable::from_labels(y_true, y_pred)?;
    if table.n < 2 {
        return Err(TsclError::MetricInput("rand index needs n >= 2".into()));
    }
    let total = pairs(table.n);
    let sum_nij: f64 = table.counts.iter().flatten().map(|&c| pairs(c)).sum();
    let sum_a: f64 = table.row_marginals.iter().map(|&c| pairs(c)).sum();
    let sum_b: f64 = table.col_marginals.iter().map(|&c| pairs(c)).sum();
    // same-same pairs + diff-diff pairs
    let agree = sum_nij + (total - sum_a - sum_b + sum_nij);
    Ok(agree / total)
}

/// Adjusted rand index; chance-corrected, 0 when both partitions are trivial.
pub fn adjusted_rand_index<A: Eq + Hash, B: Eq + Hash>(y_true: &[A], y_pred: &[B]) -> Result<f64> {
    let table = ContingencyTable::from_labels(y_true, y_pred)?;
    if table.n < 2 {
        return Err(TsclError::MetricInput("ARI needs n >= 2".into()));
    }
    let total = pairs(table.n);
    let index: f64 = table.counts.iter().flatten().map(|&c| pairs(c)).sum();
    let sum_a: f64 = table.row_marginals.iter().map(|&c| pairs(c)).sum();
    let sum_b: f64 = table.col_marginals.iter().map(|&c| pairs(c)).sum();
    let expected = sum_a * sum_b / total;
    let max_index = (sum_a + sum_b) / 2.0;
    if (max_index - expected).abs() < 1e-15 {
        return Ok(0.0);
    }
    Ok((index - expected) / (max_index - expected))
}

fn entropy(marginals: &[usize], n: usize) -> f64 {
    marginals
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n as f64;
            -p * p.ln()
        })
        .sum()
}

/// Mutual information in nats.
pub fn mutual_information<A: Eq + Hash, B: Eq + Hash>(y_true: &[A], y_pred: &[B]) -> Result<f64> {
    let table = ContingencyTable::from_labels(y_true, y_pred)?;
    Ok(mi_from_table(&table))
}

fn mi_from_table(table: &ContingencyTable) -> f64 {
    let n = table.n as f64;
    let mut mi = 0.0;
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &nij) in row.iter().enumerate() {
            if nij > 0 {
                let nij = nij as f64;
                let ai = table.row_marginals[i] as f64;
                let bj = table.col_marginals[j] as f64;
                mi += nij / n * (n * nij / (ai * bj)).ln();
            }
        }
    }
    mi.max(0.0)
}

/// NMI with the arithmetic-mean-of-entropies normaliser; 0/0 maps to 0.
pub fn normalized_mutual_information<A: Eq + Hash, B: Eq + Hash>(
    y_true: &[A],
    y_pred: &[B],
) -> Result<f64> {
    let table = ContingencyTable::from_labels(y_true, y_pred)?;
    let mi = mi_from_table(&table);
    let h = (entropy(&table.col_marginals, table.n) + entropy(&table.row_marginals, table.n)) / 2.0;
    if h < 1e-15 {
        return Ok(0.0);
    }
    Ok((mi / h).clamp(0.0, 1.0))
}

/// Exact expected MI under the hypergeometric permutation model.
fn expected_mi(table: &ContingencyTable) -> f64 {
    let n = table.n;
    // ln-factorial table
    let mut lf = vec![0.0; n + 1];
    for i in 1..=n {
        lf[i] = lf[i - 1] + (i as f64).ln();
    }
    let nf = n as f64;
    let mut emi = 0.0;
    for &ai in &table.row_marginals {
        for &bj in &table.col_marginals {
            let start = 1.max((ai + bj).saturating_sub(n));
            let end = ai.min(bj);
            for nij in start..=end {
                let nij_f = nij as f64;
                let term1 = nij_f / nf * (nf * nij_f / (ai as f64 * bj as f64)).ln();
                let log_prob = lf[ai] + lf[bj] + lf[n - ai] + lf[n - bj]
                    - lf[n]
                    - lf[nij]
                    - lf[ai - nij]
                    - lf[bj - nij]
                    - lf[(n + nij) - ai - bj];
                emi += term1 * log_prob.exp();
            }
        }
    }
    emi
}

/// AMI with the arithmetic-mean normaliser and the exact hypergeometric
/// expectation. Identical partitions score 1, trivial pairs included.
pub fn adjusted_mutual_information<A: Eq + Hash, B: Eq + Hash>(
    y_true: &[A],
    y_pred: &[B],
) -> Result<f64> {
    let table = ContingencyTable::from_labels(y_true, y_pred)?;
    let mi = mi_from_table(&table);
    let h_u = entropy(&table.col_marginals, table.n);
    let h_v = entropy(&table.row_marginals, table.n);
    if h_u < 1e-15 && h_v < 1e-15 {
        // both partitions trivial and therefore identical
        return Ok(1.0);
    }
    let emi = expected_mi(&table);
    let denom = (h_u + h_v) / 2.0 - emi;
    if denom.abs() < 1e-15 {
        return Ok(if (mi - emi).abs() < 1e-15 { 1.0 } else { 0.0 });
    }
    Ok((mi - emi) / denom)
}

/// Davies-Bouldin index on raw series values: arithmetic-mean centroids,
/// Euclidean scatter and centroid separation, independent of whatever
/// distance drove the clustering. Lower is better.
pub fn davies_bouldin(series: &[TimeSeries], assignments: &[usize], k: usize) -> Result<f64> {
    if k < 2 {
        return Err(TsclError::MetricInput("Davies-Bouldin needs k >= 2".into()));
    }
    if series.len() != assignments.len() {
        return Err(TsclError::LengthMismatch {
            left: series.len(),
            right: assignments.len(),
        });
    }
    let mut clusters: Vec<Vec<&TimeSeries>> = vec![Vec::new(); k];
    for (s, &a) in series.iter().zip(assignments) {
        if a >= k {
            return Err(TsclError::MetricInput(format!("assignment {a} out of range")));
        }
        clusters[a].push(s);
    }
    if clusters.iter().any(|c| c.is_empty()) {
        return Err(TsclError::DegenerateClustering("empty cluster".into()));
    }
    let centroids: Vec<TimeSeries> = clusters
        .iter()
        .map(|c| mean_average(&c.iter().map(|&s| s.clone()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let euclid = |a: &TimeSeries, b: &TimeSeries| -> f64 {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    };
    let scatter: Vec<f64> = clusters
        .iter()
        .zip(&centroids)
        .map(|(members, c)| {
            members.iter().map(|s| euclid(s, c)).sum::<f64>() / members.len() as f64
        })
        .collect();
    let mut db = 0.0;
    for i in 0..k {
        let mut worst = f64::NEG_INFINITY;
        for j in 0..k {
            if i == j {
                continue;
            }
            let sep = euclid(&centroids[i], &centroids[j]);
            if sep < 1e-12 {
                return Err(TsclError::DegenerateClustering(
                    "duplicate centroids".into(),
                ));
            }
            worst = worst.max((scatter[i] + scatter[j]) / sep);
        }
        db += worst;
    }
    Ok(db / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    #[test]
    fn accuracy_permutation_invariant() {
        let acc = clustering_accuracy(&[0, 0, 1, 1], &[1, 1, 0, 0]).unwrap();
        assert_eq!(acc, 1.0);
    }

    #[test]
    fn accuracy_single_cluster_degenerate() {
        let acc = clustering_accuracy(&[0, 0, 1, 1], &[0, 0, 0, 0]).unwrap();
        assert_eq!(acc, 0.5);
    }

    #[test]
    fn accuracy_surplus_clusters_count_incorrect() {
        // three clusters onto two classes: one cluster stays unassigned
        let acc = clustering_accuracy(&[0, 0, 1, 1], &[0, 1, 2, 2]).unwrap();
        assert_eq!(acc, 0.75);
    }

    #[test]
    fn rand_index_identical_partitions() {
        assert_eq!(rand_index(&[0, 1, 0, 2], &[5, 9, 5, 7]).unwrap(), 1.0);
    }

    #[test]
    fn rand_index_hand_counted() {
        // 6 pairs, 3 agree
        let ri = rand_index(&[0, 0, 1, 1], &[0, 0, 0, 1]).unwrap();
        assert!((ri - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ari_identical_partitions() {
        assert_eq!(adjusted_rand_index(&[0, 1, 2, 0], &[2, 0, 1, 2]).unwrap(), 1.0);
    }

    #[test]
    fn ari_hand_evaluated_crossing() {
        let ari = adjusted_rand_index(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap();
        assert!((ari - (-0.5)).abs() < 1e-12);
    }

    #[test]
    fn ari_both_trivial_is_zero() {
        assert_eq!(adjusted_rand_index(&[0, 0, 0], &[1, 1, 1]).unwrap(), 0.0);
    }

    #[test]
    fn mi_identity_balanced_two_class() {
        let y = [0, 0, 1, 1];
        let mi = mutual_information(&y, &y).unwrap();
        assert!((mi - 2.0f64.ln()).abs() < 1e-12);
        assert_eq!(normalized_mutual_information(&y, &y).unwrap(), 1.0);
        assert!((adjusted_mutual_information(&y, &y).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mi_independent_partitions() {
        // alternating vs block on n = 4
        let mi = mutual_information(&[0, 1, 0, 1], &[0, 0, 1, 1]).unwrap();
        assert!(mi.abs() < 1e-12);
    }

    #[test]
    fn mi_bounded_by_entropies() {
        let y_true = [0, 0, 1, 1, 2, 2, 0, 1];
        let y_pred = [0, 1, 1, 1, 2, 0, 0, 2];
        let mi = mutual_information(&y_true, &y_pred).unwrap();
        let t = ContingencyTable::from_labels(&y_true, &y_pred).unwrap();
        let h_u = entropy(&t.col_marginals, t.n);
        let h_v = entropy(&t.row_marginals, t.n);
        assert!(mi >= 0.0);
        assert!(mi <= h_u.min(h_v) + 1e-9);
    }

    #[test]
    fn db_zero_scatter() {
        let series = vec![ts(&[0.0]), ts(&[0.0]), ts(&[10.0]), ts(&[10.0])];
        let db = davies_bouldin(&series, &[0, 0, 1, 1], 2).unwrap();
        assert_eq!(db, 0.0);
    }

    #[test]
    fn db_hand_evaluated() {
        // clusters around 0 and 10 with one extra member each at +/-1:
        // scatter 1 each, separation 10 -> (1+1)/10 = 0.2
        let series = vec![ts(&[-1.0]), ts(&[1.0]), ts(&[9.0]), ts(&[11.0])];
        let db = davies_bouldin(&series, &[0, 0, 1, 1], 2).unwrap();
        assert!((db - 0.2).abs() < 1e-12);
    }

    #[test]
    fn db_overlapping_worse_than_separated() {
        let tight: Vec<TimeSeries> = vec![
            ts(&[0.0]),
            ts(&[0.5]),
            ts(&[10.0]),
            ts(&[10.5]),
        ];
        let overlapping: Vec<TimeSeries> = vec![
            ts(&[0.0]),
            ts(&[5.0]),
            ts(&[4.0]),
            ts(&[9.0]),
        ];
        let a = davies_bouldin(&tight, &[0, 0, 1, 1], 2).unwrap();
        let b = davies_bouldin(&overlapping, &[0, 0, 1, 1], 2).unwrap();
        assert!(b > a);
    }

    #[test]
    fn db_duplicate_centroids_error() {
        let series = vec![ts(&[1.0]), ts(&[1.0])];
        assert!(matches!(
            davies_bouldin(&series, &[0, 1], 2),
            Err(TsclError::DegenerateClustering(_))
        ));
    }
}
