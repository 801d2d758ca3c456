//! Elastic distance kernels and their shared plumbing: the parameter
//! bundle, a name-keyed registry, cost matrices with Sakoe-Chiba banding,
//! alignment-path traceback and pairwise distance matrices.

mod dtw;
mod edit;
mod msm;
mod twe;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, TsclError};
use crate::series::{Dataset, TimeSeries};

pub use dtw::{AlignmentPath, CostMatrix, INF};
pub use msm::msm_cost;

/// The ten supported measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceKind {
    Ed,
    Dtw,
    Ddtw,
    Wdtw,
    Wddtw,
    Lcss,
    Edr,
    Erp,
    Msm,
    Twe,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 10] = [
        DistanceKind::Ed,
        DistanceKind::Dtw,
        DistanceKind::Ddtw,
        DistanceKind::Wdtw,
        DistanceKind::Wddtw,
        DistanceKind::Lcss,
        DistanceKind::Edr,
        DistanceKind::Erp,
        DistanceKind::Msm,
        DistanceKind::Twe,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DistanceKind::Ed => "ed",
            DistanceKind::Dtw => "dtw",
            DistanceKind::Ddtw => "ddtw",
            DistanceKind::Wdtw => "wdtw",
            DistanceKind::Wddtw => "wddtw",
            DistanceKind::Lcss => "lcss",
            DistanceKind::Edr => "edr",
            DistanceKind::Erp => "erp",
            DistanceKind::Msm => "msm",
            DistanceKind::Twe => "twe",
        }
    }
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DistanceKind {
    type Err = TsclError;

    fn from_str(s: &str) -> Result<Self> {
        DistanceKind::ALL
            .iter()
            .find(|k| k.name() == s)
            .copied()
            .ok_or_else(|| TsclError::UnknownDistance(s.to_string()))
    }
}

/// A named measure plus its full parameter bundle. Parameters irrelevant
/// to the named measure are ignored by the kernels but kept so a spec
/// round-trips through serialization unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceSpec {
    pub kind: DistanceKind,
    /// Sakoe-Chiba window fraction in [0,1] (dtw/ddtw).
    pub window: f64,
    /// Logistic weight steepness g (wdtw/wddtw).
    pub weight: f64,
    /// Match threshold epsilon (lcss/edr).
    pub epsilon: f64,
    /// Gap reference value g (erp).
    pub gap: f64,
    /// Split/merge cost c (msm).
    pub cost: f64,
    /// Stiffness nu (twe).
    pub nu: f64,
    /// Edit penalty lambda (twe).
    pub lambda: f64,
    /// Divide the EDR edit count by m. Off by default.
    #[serde(default)]
    pub edr_normalize: bool,
}

impl DistanceSpec {
    pub fn new(kind: DistanceKind) -> Self {
        Self {
            kind,
            window: 0.2,
            weight: 0.05,
            epsilon: 0.05,
            gap: 0.05,
            cost: 1.0,
            nu: 0.05,
            lambda: 1.0,
            edr_normalize: false,
        }
    }

    pub fn with_window(mut self, w: f64) -> Self {
        self.window = w;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.window) {
            return Err(TsclError::InvalidParameter(format!(
                "window must lie in [0,1], got {}",
                self.window
            )));
        }
        for (name, v) in [
            ("weight", self.weight),
            ("epsilon", self.epsilon),
            ("cost", self.cost),
            ("nu", self.nu),
            ("lambda", self.lambda),
        ] {
            if v < 0.0 || !v.is_finite() {
                return Err(TsclError::InvalidParameter(format!(
                    "{name} must be a nonnegative real, got {v}"
                )));
            }
        }
        if !self.gap.is_finite() {
            return Err(TsclError::InvalidParameter("gap must be finite".into()));
        }
        Ok(())
    }

    /// Canonical one-line parameter string used in results files.
    pub fn canonical_string(&self) -> String {
        format!(
            "metric={},window={},weight={},epsilon={},gap={},cost={},nu={},lambda={},edr_normalize={}",
            self.kind,
            self.window,
            self.weight,
            self.epsilon,
            self.gap,
            self.cost,
            self.nu,
            self.lambda,
            self.edr_normalize
        )
    }
}

impl Default for DistanceSpec {
    fn default() -> Self {
        Self::new(DistanceKind::Dtw)
    }
}

fn check_equal_len(a: &TimeSeries, b: &TimeSeries) -> Result<()> {
    if a.len() != b.len() {
        return Err(TsclError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// L2 norm between two equal-length series.
pub fn euclidean(a: &TimeSeries, b: &TimeSeries) -> Result<f64> {
    check_equal_len(a, b)?;
    Ok(a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// DTW path cost with a Sakoe-Chiba band of fraction `spec.window`.
pub fn dtw(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(dtw::dtw_distance(a.values(), b.values(), spec.window))
}

/// Full accumulated cost matrix for DTW, band included.
pub fn dtw_cost_matrix(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<CostMatrix> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(dtw::cost_matrix(a.values(), b.values(), spec.window))
}

/// Minimal-cost warping path and its cost.
pub fn dtw_alignment_path(
    a: &TimeSeries,
    b: &TimeSeries,
    spec: &DistanceSpec,
) -> Result<(AlignmentPath, f64)> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(dtw::alignment_path(a.values(), b.values(), spec.window))
}

/// DTW of the derivative-transformed series.
pub fn ddtw(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    let da = crate::series::derivative_transform(a)?;
    let db = crate::series::derivative_transform(b)?;
    Ok(dtw::dtw_distance(da.values(), db.values(), spec.window))
}

/// Weighted DTW: logistic weight on |i-j| applied to the squared pointwise
/// cost, full matrix (no band).
pub fn wdtw(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(dtw::wdtw_distance(a.values(), b.values(), spec.weight))
}

/// Weighted DTW of the derivative-transformed series.
pub fn wddtw(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    let da = crate::series::derivative_transform(a)?;
    let db = crate::series::derivative_transform(b)?;
    Ok(dtw::wdtw_distance(da.values(), db.values(), spec.weight))
}

/// LCSS distance 1 - L/m where L is the longest epsilon-match length.
pub fn lcss(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    let l = lcss_match_length(a, b, spec)?;
    Ok(1.0 - l as f64 / a.len() as f64)
}

/// Longest common subsequence length under the epsilon match threshold.
pub fn lcss_match_length(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<usize> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(edit::lcss_length(a.values(), b.values(), spec.epsilon))
}

/// Edit distance on real sequences: raw edit count (optionally divided by m).
pub fn edr(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    let count = edit::edr_count(a.values(), b.values(), spec.epsilon);
    Ok(if spec.edr_normalize {
        count / a.len() as f64
    } else {
        count
    })
}

/// Edit distance with real penalty, gap reference `spec.gap`.
pub fn erp(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(edit::erp_distance(a.values(), b.values(), spec.gap))
}

/// Full ERP accumulation matrix, cumulative-prefix boundaries included.
pub fn erp_cost_matrix(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<Vec<Vec<f64>>> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(edit::erp_matrix(a.values(), b.values(), spec.gap))
}

/// Move-split-merge distance with split/merge cost `spec.cost`.
pub fn msm(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(msm::msm_distance(a.values(), b.values(), spec.cost))
}

/// Time warp edit distance with stiffness `spec.nu` and edit penalty `spec.lambda`.
pub fn twe(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    check_equal_len(a, b)?;
    spec.validate()?;
    Ok(twe::twe_distance(a.values(), b.values(), spec.nu, spec.lambda))
}

/// Apply the measure named by the spec.
pub fn distance(a: &TimeSeries, b: &TimeSeries, spec: &DistanceSpec) -> Result<f64> {
    match spec.kind {
        DistanceKind::Ed => euclidean(a, b),
        DistanceKind::Dtw => dtw(a, b, spec),
        DistanceKind::Ddtw => ddtw(a, b, spec),
        DistanceKind::Wdtw => wdtw(a, b, spec),
        DistanceKind::Wddtw => wddtw(a, b, spec),
        DistanceKind::Lcss => lcss(a, b, spec),
        DistanceKind::Edr => edr(a, b, spec),
        DistanceKind::Erp => erp(a, b, spec),
        DistanceKind::Msm => msm(a, b, spec),
        DistanceKind::Twe => twe(a, b, spec),
    }
}

/// A reusable two-series kernel with parameters bound.
pub type DistanceFn = Arc<dyn Fn(&TimeSeries, &TimeSeries) -> Result<f64> + Send + Sync>;

/// Bind the spec's parameters into a shareable kernel.
pub fn resolve_distance(spec: &DistanceSpec) -> Result<DistanceFn> {
    spec.validate()?;
    let spec = spec.clone();
    Ok(Arc::new(move |a, b| distance(a, b, &spec)))
}

/// Resolve from a textual measure name; unknown names are a registry error.
pub fn resolve_named(name: &str, spec: &DistanceSpec) -> Result<DistanceFn> {
    let kind: DistanceKind = name.parse()?;
    let mut spec = spec.clone();
    spec.kind = kind;
    resolve_distance(&spec)
}

/// Pairwise distance matrix. With `y` absent the result is the symmetric
/// n x n self-distance matrix with a zero diagonal; rows are computed in
/// parallel and entry values do not depend on the schedule.
pub fn pairwise_distance(
    x: &Dataset,
    y: Option<&Dataset>,
    spec: &DistanceSpec,
) -> Result<Vec<Vec<f64>>> {
    spec.validate()?;
    match y {
        Some(y) => x
            .series()
            .par_iter()
            .map(|a| y.series().iter().map(|b| distance(a, b, spec)).collect())
            .collect(),
        None => {
            let n = x.len();
            let upper: Vec<Vec<f64>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    (i + 1..n)
                        .map(|j| distance(&x.series()[i], &x.series()[j], spec))
                        .collect::<Result<Vec<f64>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let mut out = vec![vec![0.0; n]; n];
            for (i, row) in upper.iter().enumerate() {
                for (off, &d) in row.iter().enumerate() {
                    let j = i + 1 + off;
                    out[i][j] = d;
                    out[j][i] = d;
                }
            }
            Ok(out)
        }
    }
}
