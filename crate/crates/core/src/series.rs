//! Core time-series and dataset types plus the shared preprocessing
//! transforms: z-normalisation and the slope-average derivative.

use crate::error::{Result, TsclError};

/// A univariate time series of finite real values, length >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(TsclError::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(TsclError::NonFiniteValue { index });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// A collection of equal-length series with optional class labels.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    series: Vec<TimeSeries>,
    labels: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(
        name: impl Into<String>,
        series: Vec<TimeSeries>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if series.is_empty() {
            return Err(TsclError::EmptyDataset);
        }
        let m = series[0].len();
        for s in &series {
            if s.len() != m {
                return Err(TsclError::UnequalLengths(m, s.len()));
            }
        }
        if let Some(l) = &labels {
            if l.len() != series.len() {
                return Err(TsclError::LabelCountMismatch {
                    labels: l.len(),
                    series: series.len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            series,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// Common series length.
    pub fn series_len(&self) -> usize {
        self.series[0].len()
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.series
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of distinct labels, when labels are present.
    pub fn num_classes(&self) -> Option<usize> {
        self.labels.as_ref().map(|l| {
            let mut seen: Vec<&String> = Vec::new();
            for lab in l {
                if !seen.contains(&lab) {
                    seen.push(lab);
                }
            }
            seen.len()
        })
    }

    /// Apply a series transform to every member, keeping name and labels.
    pub fn map_series(&self, f: impl Fn(&TimeSeries) -> Result<TimeSeries>) -> Result<Dataset> {
        let series = self
            .series
            .iter()
            .map(&f)
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(self.name.clone(), series, self.labels.clone())
    }
}

/// Rescale to zero mean and unit standard deviation (population convention,
/// divide by m). Near-constant series map to all zeros rather than erroring.
pub fn z_normalize(x: &TimeSeries) -> TimeSeries {
    let v = x.values();
    let m = v.len() as f64;
    let mean = v.iter().sum::<f64>() / m;
    let var = v.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / m;
    let sd = var.sqrt();
    let values = if sd < 1e-12 {
        vec![0.0; v.len()]
    } else {
        v.iter().map(|a| (a - mean) / sd).collect()
    };
    TimeSeries { values }
}

/// Slope-average derivative: element i of the output is the average of the
/// slope from the previous point and the half-slope across its neighbours.
/// Output covers interior points only, so the length shrinks by two.
pub fn derivative_transform(x: &TimeSeries) -> Result<TimeSeries> {
    let v = x.values();
    if v.len() < 3 {
        return Err(TsclError::SeriesTooShort {
            need: 3,
            got: v.len(),
        });
    }
    let values = (1..v.len() - 1)
        .map(|i| ((v[i] - v[i - 1]) + (v[i + 1] - v[i - 1]) / 2.0) / 2.0)
        .collect();
    Ok(TimeSeries { values })
}
