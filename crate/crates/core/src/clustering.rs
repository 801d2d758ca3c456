//! Partitional clusterers: k-means (mean or barycentre averaging) and
//! k-medoids, with seeded initialisation, restarts and Davies-Bouldin
//! driven DTW window tuning.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::averaging::{dba_step, mean_average, BarycentreConfig};
use crate::distances::{self, DistanceSpec};
use crate::error::{Result, TsclError};
use crate::metrics::davies_bouldin;
use crate::series::{Dataset, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClustererKind {
    KMeans,
    KMedoids,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AveragingMethod {
    Mean,
    Dba,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitMethod {
    /// k distinct random members as initial exemplars.
    Forgy,
    /// Random cluster membership, then one update step.
    RandomPartition,
}

#[derive(Debug, Clone)]
pub struct ClusteringConfig {
    pub k: usize,
    pub clusterer: ClustererKind,
    pub averaging: AveragingMethod,
    pub distance: DistanceSpec,
    pub max_iters: usize,
    pub restarts: usize,
    pub seed: u64,
    pub init: InitMethod,
}

impl ClusteringConfig {
    pub fn new(k: usize, clusterer: ClustererKind, distance: DistanceSpec) -> Self {
        Self {
            k,
            clusterer,
            averaging: AveragingMethod::Mean,
            distance,
            max_iters: 300,
            restarts: 10,
            seed: 1,
            init: InitMethod::Forgy,
        }
    }
}

/// Fitted clustering: exemplars, assignments and the convergence record.
#[derive(Debug, Clone)]
pub struct ClusterModel {
    pub exemplars: Vec<TimeSeries>,
    /// Training-set indices of the exemplars, for k-medoids.
    pub medoid_indices: Option<Vec<usize>>,
    pub assignments: Vec<usize>,
    pub inertia: f64,
    pub iterations_run: usize,
    pub converged: bool,
    pub distance: DistanceSpec,
    /// Inertia after each assignment step of the winning restart.
    pub inertia_trace: Vec<f64>,
}

fn derived_seed(seed: u64, restart: u64) -> u64 {
    // splitmix-style stream separation per restart
    let mut z = seed ^ (restart.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_fit_preconditions(data: &Dataset, config: &ClusteringConfig) -> Result<()> {
    if config.k == 0 {
        return Err(TsclError::InvalidParameter("k must be positive".into()));
    }
    if config.k > data.len() {
        return Err(TsclError::TooManyClusters {
            k: config.k,
            n: data.len(),
        });
    }
    if config.restarts == 0 || config.max_iters == 0 {
        return Err(TsclError::InvalidParameter(
            "restarts and max_iters must be positive".into(),
        ));
    }
    Ok(())
}

/// Nearest exemplar per series under the given kernel; ties break to the
/// lowest cluster id.
fn assign_to_exemplars(
    series: &[TimeSeries],
    exemplars: &[TimeSeries],
    spec: &DistanceSpec,
) -> Result<Vec<usize>> {
    series
        .par_iter()
        .map(|s| {
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for (c, e) in exemplars.iter().enumerate() {
                let d = distances::distance(s, e, spec)?;
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            Ok(best)
        })
        .collect()
}

/// Move the globally farthest case (from its own exemplar) into each empty
/// cluster, never emptying a donor cluster. Deterministic.
fn repair_empty_clusters(
    assignments: &mut [usize],
    dist_to_own: &[f64],
    k: usize,
) {
    let mut sizes = vec![0usize; k];
    for &a in assignments.iter() {
        sizes[a] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let mut pick: Option<usize> = None;
        for i in 0..assignments.len() {
            if sizes[assignments[i]] <= 1 {
                continue;
            }
            match pick {
                None => pick = Some(i),
                Some(p) => {
                    if dist_to_own[i] > dist_to_own[p] {
                        pick = Some(i)
                    }
                }
            }
        }
        if let Some(i) = pick {
            sizes[assignments[i]] -= 1;
            assignments[i] = empty;
            sizes[empty] += 1;
        }
    }
}

fn distances_to_own(
    series: &[TimeSeries],
    exemplars: &[TimeSeries],
    assignments: &[usize],
    spec: &DistanceSpec,
) -> Result<Vec<f64>> {
    series
        .par_iter()
        .zip(assignments.par_iter())
        .map(|(s, &a)| distances::distance(s, &exemplars[a], spec))
        .collect()
}

fn kmeans_update(
    series: &[TimeSeries],
    assignments: &[usize],
    exemplars: &[TimeSeries],
    config: &ClusteringConfig,
) -> Result<Vec<TimeSeries>> {
    let k = exemplars.len();
    let mut out = Vec::with_capacity(k);
    for (c, exemplar) in exemplars.iter().enumerate() {
        let members: Vec<TimeSeries> = series
            .iter()
            .zip(assignments)
            .filter(|(_, &a)| a == c)
            .map(|(s, _)| s.clone())
            .collect();
        if members.is_empty() {
            out.push(exemplar.clone());
            continue;
        }
        let centre = match config.averaging {
            AveragingMethod::Mean => mean_average(&members)?,
            AveragingMethod::Dba => {
                let bc = BarycentreConfig {
                    window: config.distance.window,
                    ..Default::default()
                };
                let mut centre = exemplars[c].clone();
                for _ in 0..bc.max_refinements {
                    let next = dba_step(&centre, &members, bc.window)?;
                    let change = next
                        .values()
                        .iter()
                        .zip(centre.values())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0f64, f64::max);
                    centre = next;
                    if change < bc.convergence_tol {
                        break;
                    }
                }
                centre
            }
        };
        out.push(centre);
    }
    Ok(out)
}

fn kmeans_single(data: &Dataset, config: &ClusteringConfig, seed: u64) -> Result<ClusterModel> {
    let series = data.series();
    let n = series.len();
    let k = config.k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut exemplars: Vec<TimeSeries> = match config.init {
        InitMethod::Forgy => sample(&mut rng, n, k)
            .into_iter()
            .map(|i| series[i].clone())
            .collect(),
        InitMethod::RandomPartition => {
            let mut labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            // guarantee no empty cluster at init
            for c in 0..k {
                if !labels.contains(&c) {
                    let i = rng.gen_range(0..n);
                    labels[i] = c;
                }
            }
            let init_cfg = ClusteringConfig {
                averaging: AveragingMethod::Mean,
                ..config.clone()
            };
            kmeans_update(series, &labels, &vec![series[0].clone(); k], &init_cfg)?
        }
    };

    let mut assignments: Vec<usize> = vec![usize::MAX; n];
    let mut converged = false;
    let mut iterations = 0usize;
    let mut trace = Vec::new();
    for _ in 0..config.max_iters {
        iterations += 1;
        let mut next = assign_to_exemplars(series, &exemplars, &config.distance)?;
        let own = distances_to_own(series, &exemplars, &next, &config.distance)?;
        repair_empty_clusters(&mut next, &own, k);
        let own = distances_to_own(series, &exemplars, &next, &config.distance)?;
        trace.push(own.iter().sum());
        if next == assignments {
            converged = true;
            assignments = next;
            break;
        }
        assignments = next;
        exemplars = kmeans_update(series, &assignments, &exemplars, config)?;
    }
    let inertia = distances_to_own(series, &exemplars, &assignments, &config.distance)?
        .iter()
        .sum();
    Ok(ClusterModel {
        exemplars,
        medoid_indices: None,
        assignments,
        inertia,
        iterations_run: iterations,
        converged,
        distance: config.distance.clone(),
        inertia_trace: trace,
    })
}

/// k-means with mean or DBA averaging; `restarts` independent seeded
/// inits, keeping the minimum-inertia model (ties keep the earliest).
pub fn kmeans_fit(data: &Dataset, config: &ClusteringConfig) -> Result<ClusterModel> {
    check_fit_preconditions(data, config)?;
    let mut best: Option<ClusterModel> = None;
    for r in 0..config.restarts {
        let model = kmeans_single(data, config, derived_seed(config.seed, r as u64))?;
        let better = match &best {
            None => true,
            Some(b) => model.inertia < b.inertia,
        };
        if better {
            best = Some(model);
        }
    }
    Ok(best.expect("restarts >= 1"))
}

fn kmedoids_single(
    data: &Dataset,
    matrix: &[Vec<f64>],
    config: &ClusteringConfig,
    seed: u64,
) -> Result<ClusterModel> {
    let n = data.len();
    let k = config.k;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let assign = |medoids: &[usize]| -> Vec<usize> {
        (0..n)
            .map(|i| {
                let mut best = 0usize;
                let mut best_d = f64::INFINITY;
                for (c, &m) in medoids.iter().enumerate() {
                    if matrix[i][m] < best_d {
                        best_d = matrix[i][m];
                        best = c;
                    }
                }
                best
            })
            .collect()
    };
    // exact argmin-total-distance member; ties to the lowest index
    let update = |assignments: &[usize], medoids: &[usize]| -> Vec<usize> {
        (0..k)
            .map(|c| {
                let members: Vec<usize> =
                    (0..n).filter(|&i| assignments[i] == c).collect();
                if members.is_empty() {
                    return medoids[c];
                }
                let total = |cand: usize| -> f64 {
                    members.iter().map(|&j| matrix[cand][j]).sum()
                };
                let mut best = members[0];
                let mut best_t = total(best);
                for &cand in &members[1..] {
                    let t = total(cand);
                    if t < best_t {
                        best_t = t;
                        best = cand;
                    }
                }
                if medoids[c] != best {
                    debug_assert!(best_t <= total(medoids[c]) + 1e-9);
                }
                best
            })
            .collect()
    };

    let mut medoids: Vec<usize> = match config.init {
        InitMethod::Forgy => sample(&mut rng, n, k).into_iter().collect(),
        InitMethod::RandomPartition => {
            let mut labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            for c in 0..k {
                if !labels.contains(&c) {
                    let i = rng.gen_range(0..n);
                    labels[i] = c;
                }
            }
            update(&labels, &vec![0; k])
        }
    };

    let mut assignments: Vec<usize> = vec![usize::MAX; n];
    let mut converged = false;
    let mut iterations = 0usize;
    let mut trace = Vec::new();
    for _ in 0..config.max_iters {
        iterations += 1;
        let mut next = assign(&medoids);
        let own: Vec<f64> = (0..n).map(|i| matrix[i][medoids[next[i]]]).collect();
        repair_empty_clusters(&mut next, &own, k);
        trace.push((0..n).map(|i| matrix[i][medoids[next[i]]]).sum());
        if next == assignments {
            converged = true;
            assignments = next;
            break;
        }
        assignments = next;
        medoids = update(&assignments, &medoids);
    }
    let inertia = (0..n).map(|i| matrix[i][medoids[assignments[i]]]).sum();
    Ok(ClusterModel {
        exemplars: medoids.iter().map(|&m| data.series()[m].clone()).collect(),
        medoid_indices: Some(medoids),
        assignments,
        inertia,
        iterations_run: iterations,
        converged,
        distance: config.distance.clone(),
        inertia_trace: trace,
    })
}

/// k-medoids over a precomputed pairwise matrix; the update enumerates
/// every member as a candidate medoid.
pub fn kmedoids_fit(data: &Dataset, config: &ClusteringConfig) -> Result<ClusterModel> {
    check_fit_preconditions(data, config)?;
    let matrix = distances::pairwise_distance(data, None, &config.distance)?;
    let mut best: Option<ClusterModel> = None;
    for r in 0..config.restarts {
        let model = kmedoids_single(data, &matrix, config, derived_seed(config.seed, r as u64))?;
        let better = match &best {
            None => true,
            Some(b) => model.inertia < b.inertia,
        };
        if better {
            best = Some(model);
        }
    }
    Ok(best.expect("restarts >= 1"))
}

/// Dispatch on the configured clusterer.
pub fn fit(data: &Dataset, config: &ClusteringConfig) -> Result<ClusterModel> {
    match config.clusterer {
        ClustererKind::KMeans => kmeans_fit(data, config),
        ClustererKind::KMedoids => kmedoids_fit(data, config),
    }
}

/// Assign new series to the nearest trained exemplar.
pub fn predict(model: &ClusterModel, data: &Dataset) -> Result<Vec<usize>> {
    if data.series_len() != model.exemplars[0].len() {
        return Err(TsclError::LengthMismatch {
            left: data.series_len(),
            right: model.exemplars[0].len(),
        });
    }
    assign_to_exemplars(data.series(), &model.exemplars, &model.distance)
}

/// Fit at each window in {0.0, 0.1, ..., 0.9} and keep the window whose
/// final clustering scores best on the Davies-Bouldin index. Standard
/// lower-is-better selection by default; `paper_literal` selects the
/// maximum instead. Ties keep the smaller window.
pub fn tune_dtw_window(
    data: &Dataset,
    config: &ClusteringConfig,
    paper_literal: bool,
) -> Result<(f64, ClusterModel)> {
    check_fit_preconditions(data, config)?;
    let mut best: Option<(f64, f64, ClusterModel)> = None;
    for step in 0..10 {
        let w = step as f64 / 10.0;
        let mut cfg = config.clone();
        cfg.distance.window = w;
        let model = fit(data, &cfg)?;
        let db = match davies_bouldin(data.series(), &model.assignments, config.k) {
            Ok(v) => v,
            // a degenerate clustering can never win the tuning
            Err(_) => {
                if paper_literal {
                    f64::NEG_INFINITY
                } else {
                    f64::INFINITY
                }
            }
        };
        let better = match &best {
            None => true,
            Some((_, best_db, _)) => {
                if paper_literal {
                    db > *best_db
                } else {
                    db < *best_db
                }
            }
        };
        if better {
            best = Some((w, db, model));
        }
    }
    let (w, _, model) = best.expect("ten candidates");
    Ok((w, model))
}
