//! Cluster-exemplar computation: elementwise mean and DTW barycentre
//! averaging (DBA).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::distances::{self, DistanceKind, DistanceSpec};
use crate::error::{Result, TsclError};
use crate::series::TimeSeries;

/// Controls for the iterative DBA refinement.
#[derive(Debug, Clone)]
pub struct BarycentreConfig {
    pub max_refinements: usize,
    pub convergence_tol: f64,
    /// DTW window used for the member-onto-centre warps.
    pub window: f64,
}

impl Default for BarycentreConfig {
    fn default() -> Self {
        Self {
            max_refinements: 10,
            convergence_tol: 1e-5,
            window: 0.2,
        }
    }
}

/// Elementwise arithmetic mean of a nonempty cluster.
pub fn mean_average(cluster: &[TimeSeries]) -> Result<TimeSeries> {
    let first = cluster.first().ok_or(TsclError::EmptyCluster)?;
    let m = first.len();
    let mut sums = vec![0.0; m];
    for s in cluster {
        if s.len() != m {
            return Err(TsclError::LengthMismatch {
                left: m,
                right: s.len(),
            });
        }
        for (acc, v) in sums.iter_mut().zip(s.values()) {
            *acc += v;
        }
    }
    let n = cluster.len() as f64;
    TimeSeries::new(sums.into_iter().map(|v| v / n).collect())
}

/// One DBA refinement: warp every member onto the centre, bucket member
/// values by the centre index they warped onto, then take per-index means.
pub fn dba_step(centre: &TimeSeries, cluster: &[TimeSeries], window: f64) -> Result<TimeSeries> {
    if cluster.is_empty() {
        return Err(TsclError::EmptyCluster);
    }
    let spec = DistanceSpec::new(DistanceKind::Dtw).with_window(window);
    let m = centre.len();

    // Per-member (sum, count) contributions; merged order-insensitively.
    let contributions: Vec<(Vec<f64>, Vec<usize>)> = cluster
        .par_iter()
        .map(|member| {
            let (path, _) = distances::dtw_alignment_path(member, centre, &spec)?;
            let mut sums = vec![0.0; m];
            let mut counts = vec![0usize; m];
            for &(member_idx, centre_idx) in &path.pairs {
                sums[centre_idx - 1] += member.values()[member_idx - 1];
                counts[centre_idx - 1] += 1;
            }
            Ok((sums, counts))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut sums = vec![0.0; m];
    let mut counts = vec![0usize; m];
    for (s, c) in contributions {
        for i in 0..m {
            sums[i] += s[i];
            counts[i] += c[i];
        }
    }
    // A valid path touches every centre index at least once per member.
    debug_assert!(counts.iter().all(|&c| c > 0));
    TimeSeries::new(
        sums.iter()
            .zip(&counts)
            .map(|(s, &c)| s / c as f64)
            .collect(),
    )
}

/// Iterated DBA: refine from an initial centre (default: a uniformly
/// chosen member, seeded) until the elementwise change drops below the
/// tolerance or the refinement budget runs out.
pub fn dba(
    cluster: &[TimeSeries],
    config: &BarycentreConfig,
    initial: Option<TimeSeries>,
    rng_seed: u64,
) -> Result<TimeSeries> {
    if cluster.is_empty() {
        return Err(TsclError::EmptyCluster);
    }
    let mut centre = match initial {
        Some(c) => c,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            cluster[rng.gen_range(0..cluster.len())].clone()
        }
    };
    for _ in 0..config.max_refinements {
        let next = dba_step(&centre, cluster, config.window)?;
        let max_change = next
            .values()
            .iter()
            .zip(centre.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        centre = next;
        if max_change < config.convergence_tol {
            break;
        }
    }
    Ok(centre)
}
